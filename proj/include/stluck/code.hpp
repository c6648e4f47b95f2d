#pragma once

// Description grammar for integer sequences. A Code is an expression tree
// over four productions (literal, arithmetic run, repetition, concatenation);
// decoding is total and deterministic, and every tree has an exact real-valued
// bit cost. The minimum cost over all trees decoding to a sequence is that
// sequence's description complexity.

#include <cmath>
#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "stluck/bitcost.hpp"
#include "stluck/errors.hpp"

namespace stluck::mdl {

/// Inclusive integer interval [lo, hi].
struct IntRange {
  long lo = 0;
  long hi = 0;

  bool contains(long v) const { return lo <= v && v <= hi; }
  double width() const { return static_cast<double>(hi) - lo + 1.0; }
  bool valid() const { return lo <= hi; }
};

class Code;
using CodePtr = std::shared_ptr<const Code>;

/// One value drawn from a known interval.
struct Literal {
  long value = 0;
  IntRange domain;
};

/// `length` values starting at `start` with a constant signed step.
struct ArithSeq {
  Literal start;
  long step = 0;
  long length = 1;
};

/// The body's decoding repeated `count` times.
struct Repeat {
  CodePtr body;
  long count = 1;
};

/// The parts' decodings in order.
struct Concat {
  std::vector<CodePtr> parts;
};

class Code {
 public:
  using Node = std::variant<Literal, ArithSeq, Repeat, Concat>;

  explicit Code(Node node) : node_(std::move(node)) {}
  const Node& node() const { return node_; }

 private:
  Node node_;
};

inline CodePtr make_literal(long value, IntRange domain) {
  return std::make_shared<const Code>(Literal{value, domain});
}
inline CodePtr make_arith(long start, IntRange domain, long step, long length) {
  return std::make_shared<const Code>(ArithSeq{Literal{start, domain}, step, length});
}
inline CodePtr make_repeat(CodePtr body, long count) {
  return std::make_shared<const Code>(Repeat{std::move(body), count});
}
inline CodePtr make_concat(std::vector<CodePtr> parts) {
  return std::make_shared<const Code>(Concat{std::move(parts)});
}

/// Production tag: a uniform choice among the four grammar rules.
inline constexpr double kTagBits = 2.0;

// Cost helpers. The search mirrors these exactly (same operations in the
// same order), so a cost assembled incrementally from sub-results is
// bit-identical to code_cost() on the finished tree.
inline double literal_cost_bits(const IntRange& domain) {
  return kTagBits + std::log2(domain.width());
}
inline double arith_cost_bits(const IntRange& domain, long step, long length) {
  double c = kTagBits + literal_cost_bits(domain);
  c += integer_cost(static_cast<std::uint64_t>(step < 0 ? -step : step)).bits;
  c += 1.0;  // sign of the step
  c += integer_cost(static_cast<std::uint64_t>(length)).bits;
  return c;
}
inline double repeat_cost_bits(double body_bits, long count) {
  double c = kTagBits + body_bits;
  c += integer_cost(static_cast<std::uint64_t>(count)).bits;
  return c;
}
inline double concat_cost_bits(const std::vector<double>& part_bits) {
  double c = kTagBits;
  for (double p : part_bits) c += p;
  c += integer_cost(static_cast<std::uint64_t>(part_bits.size())).bits;
  return c;
}

namespace detail {

inline void validate_literal(const Literal& lit) {
  if (!lit.domain.valid()) {
    throw structural_error("literal domain [" + std::to_string(lit.domain.lo) +
                           ", " + std::to_string(lit.domain.hi) + "] is empty");
  }
  if (!lit.domain.contains(lit.value)) {
    throw structural_error("literal " + std::to_string(lit.value) +
                           " outside its domain [" +
                           std::to_string(lit.domain.lo) + ", " +
                           std::to_string(lit.domain.hi) + "]");
  }
}

inline void validate_arith(const ArithSeq& seq) {
  validate_literal(seq.start);
  if (seq.length < 1) {
    throw structural_error("arithmetic run length must be positive");
  }
  const long last = seq.start.value + seq.step * (seq.length - 1);
  if (!seq.start.domain.contains(last)) {
    throw structural_error("arithmetic run leaves the start domain");
  }
}

}  // namespace detail

/// Exact bit cost of a code tree. Throws structural_error on malformed trees.
inline double code_cost_bits(const Code& code) {
  return std::visit(
      [](const auto& node) -> double {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, Literal>) {
          detail::validate_literal(node);
          return literal_cost_bits(node.domain);
        } else if constexpr (std::is_same_v<T, ArithSeq>) {
          detail::validate_arith(node);
          return arith_cost_bits(node.start.domain, node.step, node.length);
        } else if constexpr (std::is_same_v<T, Repeat>) {
          if (!node.body) throw structural_error("repeat body is missing");
          if (node.count < 1) throw structural_error("repeat count must be positive");
          return repeat_cost_bits(code_cost_bits(*node.body), node.count);
        } else {
          if (node.parts.empty()) throw structural_error("concatenation has no parts");
          std::vector<double> part_bits;
          part_bits.reserve(node.parts.size());
          for (const CodePtr& p : node.parts) {
            if (!p) throw structural_error("concatenation part is missing");
            part_bits.push_back(code_cost_bits(*p));
          }
          return concat_cost_bits(part_bits);
        }
      },
      code.node());
}

inline BitCost code_cost(const Code& code) { return BitCost(code_cost_bits(code)); }

namespace detail {

inline void decode_into(const Code& code, std::vector<long>& out) {
  std::visit(
      [&out](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, Literal>) {
          validate_literal(node);
          out.push_back(node.value);
        } else if constexpr (std::is_same_v<T, ArithSeq>) {
          validate_arith(node);
          long v = node.start.value;
          for (long i = 0; i < node.length; ++i, v += node.step) out.push_back(v);
        } else if constexpr (std::is_same_v<T, Repeat>) {
          if (!node.body) throw structural_error("repeat body is missing");
          if (node.count < 1) throw structural_error("repeat count must be positive");
          std::vector<long> block;
          decode_into(*node.body, block);
          for (long i = 0; i < node.count; ++i) {
            out.insert(out.end(), block.begin(), block.end());
          }
        } else {
          if (node.parts.empty()) throw structural_error("concatenation has no parts");
          for (const CodePtr& p : node.parts) {
            if (!p) throw structural_error("concatenation part is missing");
            decode_into(*p, out);
          }
        }
      },
      code.node());
}

}  // namespace detail

/// The unique sequence a code tree decodes to.
inline std::vector<long> decode(const Code& code) {
  std::vector<long> out;
  detail::decode_into(code, out);
  return out;
}

/// Number of top-level parts: a concatenation's part count, 1 otherwise.
/// First tie-break key when two codes have equal cost.
inline std::size_t top_level_parts(const Code& code) {
  if (const auto* cat = std::get_if<Concat>(&code.node())) return cat->parts.size();
  return 1;
}

/// Canonical serialization defining a total order on code trees. Production
/// tags sort in grammar order (literal < arithmetic run < repeat < concat);
/// the numeric payload makes the order strict. Second tie-break key.
inline std::string canonical_key(const Code& code) {
  return std::visit(
      [](const auto& node) -> std::string {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, Literal>) {
          return "0(" + std::to_string(node.value) + ")";
        } else if constexpr (std::is_same_v<T, ArithSeq>) {
          return "1(" + std::to_string(node.start.value) + "," +
                 std::to_string(node.step) + "," + std::to_string(node.length) + ")";
        } else if constexpr (std::is_same_v<T, Repeat>) {
          return "2(" + std::to_string(node.count) + "," + canonical_key(*node.body) + ")";
        } else {
          std::string s = "3(" + std::to_string(node.parts.size());
          for (const CodePtr& p : node.parts) s += "," + canonical_key(*p);
          return s + ")";
        }
      },
      code.node());
}

/// Human-readable rendering, e.g. "arith(start=22, step=1, len=6)".
inline std::string to_string(const Code& code) {
  return std::visit(
      [](const auto& node) -> std::string {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, Literal>) {
          return "lit(" + std::to_string(node.value) + ")";
        } else if constexpr (std::is_same_v<T, ArithSeq>) {
          return "arith(start=" + std::to_string(node.start.value) +
                 ", step=" + std::to_string(node.step) +
                 ", len=" + std::to_string(node.length) + ")";
        } else if constexpr (std::is_same_v<T, Repeat>) {
          return "repeat(" + to_string(*node.body) + " x " +
                 std::to_string(node.count) + ")";
        } else {
          std::string s = "concat(";
          for (std::size_t i = 0; i < node.parts.size(); ++i) {
            if (i) s += ", ";
            s += to_string(*node.parts[i]);
          }
          return s + ")";
        }
      },
      code.node());
}

}  // namespace stluck::mdl
