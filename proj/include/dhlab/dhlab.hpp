#pragma once

#include "dhlab/cohomology.hpp"
#include "dhlab/dh.hpp"
#include "dhlab/fixed_points.hpp"
#include "dhlab/io.hpp"
#include "dhlab/monte_carlo.hpp"
#include "dhlab/polytope.hpp"
