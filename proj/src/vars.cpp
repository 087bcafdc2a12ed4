#include "gbik/vars.hpp"

#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace gbik {

namespace {
std::mutex reg_mutex;
std::vector<std::string> names;
std::unordered_map<std::string, VarId> ids;
}  // namespace

VarId var(const std::string& name) {
    if (name.empty()) throw std::invalid_argument("var: empty name");
    std::lock_guard<std::mutex> lock(reg_mutex);
    auto it = ids.find(name);
    if (it != ids.end()) return it->second;
    VarId id = static_cast<VarId>(names.size());
    names.push_back(name);
    ids.emplace(name, id);
    return id;
}

const std::string& var_name(VarId id) {
    std::lock_guard<std::mutex> lock(reg_mutex);
    if (id < 0 || id >= static_cast<VarId>(names.size()))
        throw std::out_of_range("var_name: unknown id");
    return names[static_cast<std::size_t>(id)];
}

int var_count() {
    std::lock_guard<std::mutex> lock(reg_mutex);
    return static_cast<int>(names.size());
}

}  // namespace gbik
