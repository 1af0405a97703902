#ifndef AFREE_DSL_HPP
#define AFREE_DSL_HPP

#include <string>
#include <string_view>

#include "afree/operator_system.hpp"

namespace afree {

// Textual operator format, one equation per "... = 0;" statement:
//
//   dims 2;                              # optional explicit dimension
//   D[1,0] u1 + D[0,1] u1 + D[0,2] u1 = 0;
//   (x1^2+1) * D[2,0] u2 = 0;
//
// Coefficients are parenthesized rational polynomials in x1..xd (or bare
// rationals); "#" starts a line comment; whitespace is insignificant.
OperatorSystem parse_operator(std::string_view source);

// Canonical text form; parse_operator(serialize_operator(op)) == op.
std::string serialize_operator(const OperatorSystem& op);

}  // namespace afree

#endif
