#pragma once

#include <string>
#include <vector>

#include "gxcalc/catdata.hpp"

namespace gxcalc {

std::vector<std::string> catalog_names();

// Loads a built-in category by name. When GXCALC_CATALOG_DIR is set, the
// file <dir>/<name>.cat is read instead.
SkeletalCategory catalog_load(const std::string& name);

// The in-code definitions, independent of any catalog directory.
SkeletalCategory catalog_builtin(const std::string& name);

// Sets every admissible F entry that is still absent to 1.
void fill_trivial_F(SkeletalCategory& c);

}  // namespace gxcalc
