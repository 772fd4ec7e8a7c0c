#pragma once

// Umbrella header.

#include "stacky/abgroup.hpp"
#include "stacky/cli.hpp"
#include "stacky/fan.hpp"
#include "stacky/intlinalg.hpp"
#include "stacky/io.hpp"
#include "stacky/lp.hpp"
#include "stacky/polytope.hpp"
#include "stacky/stacky_polytope.hpp"
#include "stacky/strata_family.hpp"
