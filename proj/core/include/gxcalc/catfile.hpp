#pragma once

#include <string>
#include <string_view>

#include "gxcalc/catdata.hpp"

namespace gxcalc {

// Text form of a SkeletalCategory. Sections:
//   [category] name/orientation/partial/trivial_u_eta as "key = value"
//   [group]    element names, then "g : g*h ..." rows
//   [objects]  "label sector dual"
//   [alias]    "alias = label"
//   [fusion]   "a b -> c c*2 ..."
//   [action]   "g : image of each label in declaration order"
//   [F] "a b c d e f = v"   [R] "a b c = v"   [U] "g a b c = v"
//   [eta] "x g h = v"   [twist] "a = v"   [S] "a : v ; v ; ..."
// Values are exact tokens or decimal complex numbers.
SkeletalCategory parse_category(std::string_view text);
std::string emit_category(const SkeletalCategory& c);

}  // namespace gxcalc
