#pragma once

#include "orbicalc/group.hpp"

#include <string>
#include <vector>

namespace orbicalc {

// Named test groups: C1..C24, C2xC2, C2xC4, D4 (order 8), D6 (order 12), Q8, A4, S3, S4.
FiniteGroup catalog_group(const std::string& name);
bool is_catalog_name(const std::string& name);
// Names of catalog groups of order <= max_order, sorted by (order, name).
std::vector<std::string> catalog_names(int max_order = 24);

}  // namespace orbicalc
