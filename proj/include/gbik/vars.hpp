#pragma once

#include <string>
#include <vector>

namespace gbik {

// Global append-only variable registry. Ids are dense and stable for the
// lifetime of the process, so monomials can store them directly.
using VarId = int;

VarId var(const std::string& name);             // interns, returns existing id if known
const std::string& var_name(VarId id);
int var_count();

}  // namespace gbik
