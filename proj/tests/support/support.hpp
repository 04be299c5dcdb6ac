#pragma once

#include "mow/gridgraph.hpp"

#include <cstdint>
#include <vector>

namespace testsupport {

// All fixed polyominoes with exactly n cells, translation-normalized
// (min i = min j = 0), each sorted row-major.
std::vector<std::vector<mow::PixelCoord>> all_polyominoes(int n);

mow::Polyomino make_polyomino(std::vector<mow::PixelCoord> cells);
mow::GridGraph dual_of(const std::vector<mow::PixelCoord>& cells);

// True when removing some node disconnects the dual graph.
bool has_cut_vertex(const mow::GridGraph& g);

// Reference optimum for the tile-tour problem: Dijkstra over states
// (port to enter through, set of covered pixels), anchored at the covering
// tiles of the smallest pixel. Independent of the branch-and-bound solver.
double brute_tile_optimum(const mow::GridGraph& g);

// Trial-division factorization over F_p for small inputs: returns the
// irreducible factor degrees with multiplicity (ascending) and whether the
// polynomial was squarefree. coeffs ascending, caller reduces mod p.
std::vector<int> naive_factor_degrees(std::vector<std::int64_t> coeffs, std::int64_t p,
                                      bool& squarefree);

} // namespace testsupport
