#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/rational_adaptor.hpp>

namespace mrv {

// Arbitrary-precision integers and exact normalized rationals.
// cpp_rational keeps numerator/denominator coprime with a positive denominator.
using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline BigRat makeRat(BigInt num, BigInt den) { return BigRat(std::move(num), std::move(den)); }

}  // namespace mrv
