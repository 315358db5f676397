#pragma once

#include "adlv/workspace.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <string>

namespace adlv::testing {

inline std::string fixture_path(const std::string& name) { return std::string(ADLV_TEST_DATA_DIR) + "/" + name + ".json"; }

// Workspaces are expensive to build; share one per fixture across a test binary.
inline const Workspace& workspace(const std::string& name) {
    static std::mutex mutex;
    static std::map<std::string, std::shared_ptr<Workspace>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[name];
    if (!slot) slot = Workspace::load(fixture_path(name));
    return *slot;
}

inline AffineElement element(const Workspace& ws, const std::string& json) { return ws.affine().parse(json); }

inline WeylElement word(const Workspace& ws, std::vector<int> one_based) {
    for (auto& letter : one_based) --letter;
    return ws.weyl().from_word(one_based);
}

}  // namespace adlv::testing
