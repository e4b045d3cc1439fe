#pragma once

#include "fks/spaces/besov.hpp"
#include "fks/spaces/littlewood_paley.hpp"
#include "fks/spaces/morrey.hpp"
#include "fks/spaces/probes.hpp"
