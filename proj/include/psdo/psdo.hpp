#ifndef PSDO_PSDO_HPP
#define PSDO_PSDO_HPP

#include <psdo/errors.hpp>
#include <psdo/scalars.hpp>
#include <psdo/circle.hpp>
#include <psdo/symbol.hpp>
#include <psdo/maps.hpp>
#include <psdo/cohomology.hpp>
#include <psdo/deformations.hpp>
#include <psdo/charges.hpp>
#include <psdo/report.hpp>
#include <psdo/suites.hpp>
#include <psdo/cli.hpp>

#endif
