#pragma once

#include <string>

#include "mtor/graph.hpp"
#include "mtor/marked_map_io.hpp"

namespace fixtures {

inline std::string path(const std::string& name) {
    return std::string(MTOR_TEST_DATA_DIR) + "/" + name;
}

inline mtor::MarkedMap load(const std::string& name) {
    return mtor::load_marked_map(path(name));
}

inline mtor::MarkedMap example1() { return load("example1.map"); }
inline mtor::MarkedMap fig8() { return load("fig8.map"); }
inline mtor::MarkedMap identity_rose(int genus) {
    return load(genus == 1 ? "identity_rose1.map" : "identity_rose2.map");
}

// f^k with the same boundary loop.
inline mtor::MarkedMap power(const mtor::MarkedMap& mm, int k) {
    mtor::GraphMap m = mtor::identity_map(mm.graph());
    for (int i = 0; i < k; i++)
        m = mtor::compose(mm.map, m);
    return mtor::MarkedMap{m, mm.boundary};
}

} // namespace fixtures
