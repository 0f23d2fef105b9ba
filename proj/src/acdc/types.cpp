#include "acdc/types.hpp"

namespace acdc {

int MtdcSystem::node_index(int node_id) const {
    for (size_t i = 0; i < dc_nodes.size(); ++i) {
        if (dc_nodes[i].id == node_id) return static_cast<int>(i);
    }
    return -1;
}

}  // namespace acdc
