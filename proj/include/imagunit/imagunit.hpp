#pragma once

#include "imagunit/errors.hpp"
#include "imagunit/quaternion.hpp"
#include "imagunit/vec3.hpp"
#include "imagunit/grid.hpp"
#include "imagunit/rk4.hpp"
#include "imagunit/csv.hpp"
#include "imagunit/eigenstates.hpp"
#include "imagunit/schedule.hpp"
#include "imagunit/continuity.hpp"
#include "imagunit/deformed.hpp"
#include "imagunit/quat_dynamics.hpp"
#include "imagunit/random_fields.hpp"
#include "imagunit/audit.hpp"
