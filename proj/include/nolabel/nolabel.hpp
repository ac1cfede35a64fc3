#pragma once

// Convenience header: the whole no-label two-particle library.

#include "error.hpp"
#include "hilbert.hpp"
#include "symm.hpp"
#include "reduction.hpp"
#include "entanglement.hpp"
#include "oracle.hpp"
#include "random.hpp"
#include "scenario.hpp"
