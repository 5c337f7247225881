#pragma once

#include "rwlab/instances.hpp"

namespace fixtures {

/// three-vertex directed edge-colored path 0 ->1 1 ->2 2, asks for walk 0..2
/// reading colors 1,2 (answer: yes, uniquely via the path)
inline rwlab::WalkInstance make_i0() {
    rwlab::WalkInstance w;
    w.graph.directed = true;
    w.graph.mode = rwlab::ColoringMode::edge;
    w.graph.n = 3;
    w.graph.num_colors = 2;
    w.graph.edges = {{0, 1}, {1, 2}};
    w.graph.colors = {1, 2};
    w.s = 0;
    w.t = 2;
    w.seq = {1, 2};
    rwlab::finalize(w);
    return w;
}

/// node-colored counterpart: same path with vertex colors 1,2,1 and the walk
/// reads the colors of the visited vertices 1 and 2
inline rwlab::WalkInstance make_j0() {
    rwlab::WalkInstance w;
    w.graph.directed = true;
    w.graph.mode = rwlab::ColoringMode::node;
    w.graph.n = 3;
    w.graph.num_colors = 2;
    w.graph.edges = {{0, 1}, {1, 2}};
    w.graph.colors = {1, 2, 1};
    w.s = 0;
    w.t = 2;
    w.seq = {2, 1};
    rwlab::finalize(w);
    return w;
}

}  // namespace fixtures
