#pragma once

#include <bit>
#include <cstdint>
#include <span>

namespace mmspace {

/// Bron-Kerbosch with Tomita pivoting over at most 64 vertices.
/// adjacency[v] is the neighbour mask of v and must not contain v itself.
/// Calls visit(mask) once per maximal clique.
template <class Visit>
void for_each_maximal_clique(std::span<const std::uint64_t> adjacency, Visit&& visit) {
  struct Recurse {
    std::span<const std::uint64_t> adj;
    Visit& visit;

    void operator()(std::uint64_t R, std::uint64_t P, std::uint64_t X) {
      if (P == 0) {
        if (X == 0) visit(R);
        return;
      }
      // Pivot: the vertex of P u X with the most neighbours in P.
      std::uint64_t candidates = P | X;
      int pivot = std::countr_zero(candidates);
      int best = -1;
      for (std::uint64_t c = candidates; c; c &= c - 1) {
        int u = std::countr_zero(c);
        int k = std::popcount(P & adj[static_cast<std::size_t>(u)]);
        if (k > best) {
          best = k;
          pivot = u;
        }
      }
      for (std::uint64_t c = P & ~adj[static_cast<std::size_t>(pivot)]; c; c &= c - 1) {
        int v = std::countr_zero(c);
        std::uint64_t bit = std::uint64_t{1} << v;
        std::uint64_t nv = adj[static_cast<std::size_t>(v)];
        (*this)(R | bit, P & nv, X & nv);
        P &= ~bit;
        X |= bit;
      }
    }
  };

  const std::size_t n = adjacency.size();
  const std::uint64_t all = n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  Recurse{adjacency, visit}(0, all, 0);
}

}  // namespace mmspace
