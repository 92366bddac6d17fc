#pragma once

#include <gmpxx.h>

#include "momentkit/poly.hpp"

namespace momentkit {

// Exact instantiation used for symbolic identity checks.
using RationalPolynomial = BasicPolynomial<mpq_class>;

}  // namespace momentkit
