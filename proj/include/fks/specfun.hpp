#pragma once

#include "fks/specfun/fractional_calculus.hpp"
#include "fks/specfun/gamma.hpp"
#include "fks/specfun/golden_table.hpp"
#include "fks/specfun/mainardi_wright.hpp"
#include "fks/specfun/mittag_leffler.hpp"
#include "fks/specfun/quadrature.hpp"
