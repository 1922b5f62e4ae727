#ifndef LAMBDAH_GEN_HPP
#define LAMBDAH_GEN_HPP

// Exhaustive enumeration and seeded random generation of lambda-H terms.

#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "lambdah/term.hpp"

namespace lambdah {

struct GenConfig {
  std::uint64_t seed = 0;
  std::size_t max_size = 10;
  std::uint32_t free_vars = 0;
  double h_weight = 0.3;  // probability that a leaf is H rather than a variable
};

namespace detail {

// Terms of exactly `size` nodes over `free` free variables, in canonical
// order: H, variables by index, abstractions, then applications by
// increasing function size.
class Enumerator {
 public:
  const std::vector<Term>& exactly(std::size_t size, std::uint32_t free) {
    auto key = std::make_pair(size, free);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    std::vector<Term> out;
    if (size == 1) {
      out.push_back(Term::h());
      for (std::uint32_t i = 0; i < free; ++i) out.push_back(Term::var(i));
    } else {
      for (const Term& body : exactly(size - 1, free + 1)) out.push_back(Term::abs(body));
      for (std::size_t left = 1; left + 2 <= size; ++left) {
        const auto& funs = exactly(left, free);
        const auto& args = exactly(size - 1 - left, free);
        for (const Term& f : funs) {
          for (const Term& a : args) out.push_back(Term::app(f, a));
        }
      }
    }
    return cache_.emplace(key, std::move(out)).first->second;
  }

 private:
  std::map<std::pair<std::size_t, std::uint32_t>, std::vector<Term>> cache_;
};

}  // namespace detail

// Every term with at most `max_size` nodes over `free_vars` free variables,
// each exactly once, ordered by size and then canonically within a size.
inline std::vector<Term> enumerate(std::size_t max_size, std::uint32_t free_vars) {
  detail::Enumerator e;
  std::vector<Term> out;
  for (std::size_t n = 1; n <= max_size; ++n) {
    const auto& layer = e.exactly(n, free_vars);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

// Seeded generator. mt19937_64 output is fixed by the standard; the bounded
// draws below avoid the implementation-defined std distributions so streams
// match across platforms.
class TermGenerator {
 public:
  explicit TermGenerator(const GenConfig& cfg) : cfg_(cfg), rng_(cfg.seed) {}

  const GenConfig& config() const { return cfg_; }

  // Well-scoped over cfg.free_vars, size uniform in [1, max_size].
  Term term() {
    const std::size_t size = 1 + below(cfg_.max_size == 0 ? 1 : cfg_.max_size);
    return exact(size, cfg_.free_vars);
  }

  Term term_of_size(std::size_t size) { return exact(size == 0 ? 1 : size, cfg_.free_vars); }

  // Two terms with equal E-images: a common base with applied-H wrappers
  // inserted independently into each copy. E(H W V..) = E(W V..), so every
  // wrapper is invisible to E.
  std::pair<Term, Term> pair_equal_E() {
    const Term base = term();
    Term first = wrap(base);
    Term second = wrap(base);
    return {first, second};
  }

  // Inserts applied-H wrappers around random subterms of `t`.
  Term wrap(const Term& t, double probability = 0.25) {
    Term rebuilt = t;
    switch (t.kind()) {
      case Term::Kind::Abs:
        rebuilt = Term::abs(wrap(t.body(), probability));
        break;
      case Term::Kind::App: {
        Term f = wrap(t.fun(), probability);
        rebuilt = Term::app(f, wrap(t.arg(), probability));
        break;
      }
      default:
        break;
    }
    while (chance(probability)) rebuilt = Term::app(Term::h(), rebuilt);
    return rebuilt;
  }

  std::uint64_t below(std::uint64_t bound) {
    // Rejection sampling for an unbiased draw in [0, bound).
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
      x = rng_();
    } while (x >= limit);
    return x % bound;
  }

  bool chance(double p) { return static_cast<double>(rng_() >> 11) * 0x1.0p-53 < p; }

 private:
  Term leaf(std::uint32_t free) {
    if (free == 0 || chance(cfg_.h_weight)) return Term::h();
    return Term::var(static_cast<std::uint32_t>(below(free)));
  }

  Term exact(std::size_t size, std::uint32_t free) {
    if (size == 1) return leaf(free);
    if (size == 2) return Term::abs(leaf(free + 1));
    if (below(3) == 0) return Term::abs(exact(size - 1, free + 1));
    const std::size_t left = 1 + below(size - 2);
    Term f = exact(left, free);
    return Term::app(f, exact(size - 1 - left, free));
  }

  GenConfig cfg_;
  std::mt19937_64 rng_;
};

inline Term random_term(const GenConfig& cfg) { return TermGenerator(cfg).term(); }

inline std::pair<Term, Term> random_pair_equal_E(const GenConfig& cfg) { return TermGenerator(cfg).pair_equal_E(); }

// `count` terms from one seeded stream.
inline std::vector<Term> random_corpus(const GenConfig& cfg, std::size_t count) {
  TermGenerator gen(cfg);
  std::vector<Term> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(gen.term());
  return out;
}

}  // namespace lambdah

#endif  // LAMBDAH_GEN_HPP
