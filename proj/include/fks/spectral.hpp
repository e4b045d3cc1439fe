#pragma once

#include "fks/spectral/fft.hpp"
#include "fks/spectral/grid.hpp"
#include "fks/spectral/operators.hpp"
#include "fks/spectral/parallel.hpp"
#include "fks/spectral/snapshot.hpp"
#include "fks/spectral/solution_ops.hpp"
