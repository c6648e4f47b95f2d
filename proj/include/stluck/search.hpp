#pragma once

// Exhaustive shortest-description search. Dynamic programming over contiguous
// subsequences covers every tree in the grammar: literals and arithmetic runs
// are leaves, a repetition's body is the optimal code of its block (which may
// itself be a concatenation), and concatenations range over all partitions
// into two or more parts, each part being the optimal code of its segment.
// Nested concatenations never beat the flat partition with the same leaves,
// and a minimal tree never contains a sub-tree that is not minimal for its
// own segment, so the DP optimum equals the minimum over the full grammar.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "stluck/bitcost.hpp"
#include "stluck/code.hpp"
#include "stluck/errors.hpp"

namespace stluck::mdl {

/// Exhaustive search is bounded; beyond this length the partition space is
/// no longer worth enumerating.
inline constexpr std::size_t kMaxSearchLength = 12;

struct Description {
  CodePtr code;
  BitCost cost;
};

namespace detail {

// Winner for one subsequence. `cost` always equals code_cost_bits of the
// materialized tree, bit for bit, because candidates are assembled with the
// same cost helpers the tree evaluator uses.
struct SearchEntry {
  double cost = 0.0;
  std::size_t parts = 1;
  std::string key;
  CodePtr code;
};

// Tie policy: lower cost wins; on exact cost ties prefer fewer top-level
// parts, then the smaller canonical key (grammar-order production tags).
inline bool beats(double cost, std::size_t parts, const std::string& key,
                  const SearchEntry& best) {
  if (cost != best.cost) return cost < best.cost;
  if (parts != best.parts) return parts < best.parts;
  return key < best.key;
}

}  // namespace detail

/// Minimal-cost code decoding exactly to `seq`, over the full grammar.
/// Deterministic: ties are broken by part count, then canonical key.
inline Description shortest_description(std::span<const long> seq, IntRange domain) {
  if (!domain.valid()) {
    throw stluck::domain_error("domain [" + std::to_string(domain.lo) + ", " +
                               std::to_string(domain.hi) + "] is empty");
  }
  const std::size_t n = seq.size();
  if (n < 1 || n > kMaxSearchLength) {
    throw capacity_error("sequence length " + std::to_string(n) +
                         " outside the search bound [1, " +
                         std::to_string(kMaxSearchLength) + "]");
  }
  for (long v : seq) {
    if (!domain.contains(v)) {
      throw stluck::domain_error("element " + std::to_string(v) +
                                 " outside domain [" + std::to_string(domain.lo) +
                                 ", " + std::to_string(domain.hi) + "]");
    }
  }

  // best[i][j] = winner for seq[i..i+j] (j = length - 1).
  std::vector<std::vector<detail::SearchEntry>> best(
      n, std::vector<detail::SearchEntry>(n));
  auto entry = [&](std::size_t i, std::size_t len) -> detail::SearchEntry& {
    return best[i][len - 1];
  };

  for (std::size_t len = 1; len <= n; ++len) {
    for (std::size_t i = 0; i + len <= n; ++i) {
      detail::SearchEntry win;
      bool have = false;
      auto consider = [&](double cost, std::size_t parts, std::string key,
                          CodePtr code) {
        if (!have || detail::beats(cost, parts, key, win)) {
          win = detail::SearchEntry{cost, parts, std::move(key), std::move(code)};
          have = true;
        }
      };

      if (len == 1) {
        CodePtr lit = make_literal(seq[i], domain);
        consider(literal_cost_bits(domain), 1, canonical_key(*lit), lit);
      }

      if (len >= 2) {
        // Arithmetic run across the whole segment.
        const long step = seq[i + 1] - seq[i];
        bool arith = true;
        for (std::size_t t = 2; t < len && arith; ++t) {
          arith = (seq[i + t] - seq[i + t - 1]) == step;
        }
        if (arith) {
          CodePtr run = make_arith(seq[i], domain, step, static_cast<long>(len));
          consider(arith_cost_bits(domain, step, static_cast<long>(len)), 1,
                   canonical_key(*run), run);
        }

        // Repetition of a shorter block.
        for (std::size_t d = 1; d * 2 <= len; ++d) {
          if (len % d != 0) continue;
          bool periodic = true;
          for (std::size_t t = d; t < len && periodic; ++t) {
            periodic = seq[i + t] == seq[i + t - d];
          }
          if (!periodic) continue;
          const detail::SearchEntry& body = entry(i, d);
          const long count = static_cast<long>(len / d);
          consider(repeat_cost_bits(body.cost, count), 1,
                   "2(" + std::to_string(count) + "," + body.key + ")",
                   make_repeat(body.code, count));
        }

        // All partitions into >= 2 parts (part codes are the sub-winners,
        // which may themselves be concatenations; flattening those can only
        // shrink the part count further, and such flat partitions are also
        // enumerated here).
        std::vector<std::size_t> lens;
        auto walk = [&](auto&& self, std::size_t pos, double acc) -> void {
          if (pos == len) {
            if (lens.size() < 2) return;
            double cost = acc;
            cost += integer_cost(lens.size()).bits;
            if (have && cost > win.cost) return;  // key/tree only for contenders
            std::string key = "3(" + std::to_string(lens.size());
            std::size_t at = i;
            for (std::size_t l : lens) {
              key += "," + entry(at, l).key;
              at += l;
            }
            key += ")";
            std::vector<CodePtr> parts;
            parts.reserve(lens.size());
            at = i;
            for (std::size_t l : lens) {
              parts.push_back(entry(at, l).code);
              at += l;
            }
            consider(cost, lens.size(), std::move(key), make_concat(std::move(parts)));
            return;
          }
          for (std::size_t l = 1; pos + l <= len; ++l) {
            lens.push_back(l);
            self(self, pos + l, acc + entry(i + pos, l).cost);
            lens.pop_back();
          }
        };
        walk(walk, 0, kTagBits);
      }

      entry(i, len) = std::move(win);
    }
  }

  detail::SearchEntry& top = entry(0, n);
  return Description{top.code, BitCost(top.cost)};
}

}  // namespace stluck::mdl
