#pragma once

#include <string>
#include <vector>

#include "zerostrip/series.hpp"

namespace zerostrip {

// Series mini-language (see README for the grammar):
//   zeta
//   L(mod=5,value(2)=i)          L(mod=35,index=7)        L(mod=35,index=7,primitive)
//   conj(S)
//   lin(c1*S1 + c2*S2 - S3)      complex literals: 1.5, -i, 2i, 1+2i, (0.5-0.3i)
//   conv(S1,S2)
//   inv(S)
//   explicit(1,0,-i,0.5+2i)
Series parse_series(const std::string& text);

cplx parse_complex(const std::string& text);

// Split on commas at parenthesis depth 0 (basis lists contain L(...,...)).
std::vector<std::string> split_top_level(const std::string& text, char sep = ',');

}  // namespace zerostrip
