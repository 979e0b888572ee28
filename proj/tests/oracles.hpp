#pragma once

// Slow reference implementations used only by the tests. None of them
// calls the library routine it is compared against.

#include "mwg/game.hpp"
#include "mwg/halfspace.hpp"
#include "mwg/io.hpp"

#include <set>
#include <string>
#include <vector>

namespace oracle {

using mwg::BigInt;
using mwg::GameGraph;
using mwg::Player;
using mwg::VertexId;
using mwg::WeightVector;

mwg::GameDocument load_named(const std::string& name);

// Builds a graph from (name, owner) pairs and (src, dst, weight) triples.
GameGraph make_graph(std::size_t d, const std::vector<std::pair<std::string, int>>& vertices,
                     const std::vector<std::tuple<std::string, std::string, WeightVector>>& edges);

BigInt pow_by_squaring(BigInt base, unsigned long exponent);

// A_0 = nv, A_{i+1} = 1 + A_i (credit(i+1) + (4 A_i ne)^{2 (d+2)^3}).
BigInt arena_recurrence(const BigInt& nv, const BigInt& ne, const std::vector<long long>& credit, std::size_t d);

// Distinct nonzero weights of simple cycles, by walking every simple path.
std::set<std::vector<long long>> cycle_weights(const GameGraph& g);

// Number of open half-spaces of Q^d bounded by a hyperplane spanned by
// vectors in [-M, M]^d; d <= 3. Normals come from cross products.
std::size_t count_top_halfspaces(long long m, std::size_t d);

// Whether w lies in the common prefix of the given chains, read off the
// normals only.
bool lca_contains(const std::vector<mwg::PerfectHalfSpace>& colours, const WeightVector& w);

// Unmemoised minimax over the first-cycle game with the given colours.
Player first_cycle_winner(const GameGraph& g, VertexId start, const std::vector<mwg::PerfectHalfSpace>& universe);

// Safety game on the explicit box: leaving [lower, upper] loses for
// Player 1. Plain fixpoint over a std::map of states.
bool safety_player1_wins(const GameGraph& g, VertexId start, const std::vector<long long>& lower,
                         const std::vector<long long>& upper);

// Player 2 can force some coordinate of credit + level below 0 within
// `depth` moves.
bool player2_forces_negative(const GameGraph& g, VertexId v, std::vector<long long> energy, std::size_t depth);

// A self-covering tree of depth <= `depth` in which credit + level stays
// non-negative: a certificate that Player 1 wins with that credit.
bool credit_cover(const GameGraph& g, VertexId start, const std::vector<long long>& credit, std::size_t depth);

// Fourier-Motzkin: does some x > 0 satisfy sum_i x_i a_i = 0?
bool positive_kernel_exists(const std::vector<WeightVector>& columns);

std::vector<long long> to_ll(const WeightVector& w);

}  // namespace oracle
