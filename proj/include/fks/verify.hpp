#pragma once

#include "fks/verify/admissible.hpp"
#include "fks/verify/asymptotics.hpp"
#include "fks/verify/contraction.hpp"
#include "fks/verify/decay.hpp"
#include "fks/verify/norms.hpp"
