#pragma once

#include "fks/mild/nonlinear.hpp"
#include "fks/mild/propagator.hpp"
#include "fks/mild/scaling.hpp"
#include "fks/mild/solver.hpp"
#include "fks/mild/state.hpp"
