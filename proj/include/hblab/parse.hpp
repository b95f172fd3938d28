#pragma once

#include <string>
#include <string_view>

#include "hblab/function.hpp"

namespace hblab {

/// Function literal: either a structured object
///   {"type":"poly","coeffs":[[re,im],...]}
///   {"type":"rational","num":[...],"den":[...]}
///   {"type":"blaschke","zeros":[[re,im],...],"phase":[re,im]}
/// or an infix expression over + - * / ^, z, i, sqrt(...), decimal literals
/// and implicit products, e.g. "(1+z)/2", "z(1+z)/2", "sqrt(3)/(2+z)".
/// Throws Error(Parse) on malformed input.
Function parse_function(std::string_view text);

/// Infix expression as a (numerator, denominator) pair before reduction.
std::pair<Poly, Poly> parse_rational(std::string_view text);

/// Complex number "re", "[re,im]" or an infix constant such as "1-2i".
cplx parse_complex(std::string_view text);

}  // namespace hblab
