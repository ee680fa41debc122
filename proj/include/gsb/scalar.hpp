#ifndef GSB_SCALAR_HPP
#define GSB_SCALAR_HPP

#include <gmpxx.h>
#include <string>

namespace gsb {

/// Exact rational coefficients. GMP keeps values canonical (reduced,
/// positive denominator) through arithmetic.
using Scalar = mpq_class;

inline std::string to_string(const Scalar& s) { return s.get_str(); }

} // namespace gsb

#endif
