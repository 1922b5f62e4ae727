#ifndef LAMBDAH_SYNTAX_HPP
#define LAMBDAH_SYNTAX_HPP

// Surface syntax: named terms, the parser and the pretty-printer.
//
//   term  := abs | app
//   abs   := ("\" | "λ") ident+ "." term
//   app   := atom atom* [abs]
//   atom  := ident | "H" | "(" term ")"
//   ident := [a-z][A-Za-z0-9_']*
//
// Application is left-associative and an abstraction body extends as far
// right as possible. "#" starts a comment that runs to the end of the line.
// Other capitalised words are named constants, resolved through
// ParseOptions::constants when one is supplied.

#include <algorithm>
#include <cctype>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "lambdah/error.hpp"
#include "lambdah/term.hpp"

namespace lambdah {

// Named-variable syntax tree. Multi-binder abstractions are desugared into
// nested single-binder nodes.
struct SourceTerm {
  enum class Kind { Var, Abs, App, H };

  Kind kind = Kind::H;
  std::string name;  // Var: identifier, Abs: binder
  std::shared_ptr<const SourceTerm> left;   // Abs body or App function
  std::shared_ptr<const SourceTerm> right;  // App argument

  static SourceTerm var(std::string name) { return {Kind::Var, std::move(name), nullptr, nullptr}; }
  static SourceTerm abs(std::string binder, SourceTerm body) {
    return {Kind::Abs, std::move(binder), std::make_shared<const SourceTerm>(std::move(body)), nullptr};
  }
  static SourceTerm app(SourceTerm fun, SourceTerm arg) {
    return {Kind::App, {}, std::make_shared<const SourceTerm>(std::move(fun)),
            std::make_shared<const SourceTerm>(std::move(arg))};
  }
  static SourceTerm h() { return {}; }
};

struct ParseOptions {
  // Resolves capitalised names other than H. The result must be closed.
  std::function<std::optional<Term>(std::string_view)> constants;
};

SourceTerm from_debruijn(const Term& t, const std::vector<std::string>& free_names = {});

namespace detail {

class Parser {
 public:
  Parser(std::string_view text, const ParseOptions& options) : text_(text), options_(options) {}

  SourceTerm parse_all() {
    skip_space();
    if (at_end()) fail("expected a term");
    SourceTerm t = parse_term();
    skip_space();
    if (!at_end()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return t;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }

  [[noreturn]] void fail(const std::string& message) const {
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        column = 1;
      } else if ((static_cast<unsigned char>(text_[i]) & 0xC0) != 0x80) {
        ++column;
      }
    }
    throw ParseError(message, line, column);
  }

  void skip_space() {
    while (!at_end()) {
      char c = text_[pos_];
      if (c == '#') {
        while (!at_end() && text_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  bool at_lambda() const {
    if (at_end()) return false;
    if (text_[pos_] == '\\') return true;
    return text_.substr(pos_, 2) == "\xCE\xBB";
  }

  void consume_lambda() { pos_ += text_[pos_] == '\\' ? 1 : 2; }

  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  }

  bool at_atom_start() const {
    if (at_end()) return false;
    char c = text_[pos_];
    return c == '(' || std::isalpha(static_cast<unsigned char>(c));
  }

  std::string read_word() {
    std::size_t start = pos_;
    while (!at_end() && ident_char(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  SourceTerm parse_term() {
    skip_space();
    if (at_lambda()) return parse_abs();
    return parse_app();
  }

  SourceTerm parse_abs() {
    consume_lambda();
    std::vector<std::string> binders;
    while (true) {
      skip_space();
      if (at_end()) fail("expected binder or '.'");
      if (text_[pos_] == '.') break;
      if (!std::islower(static_cast<unsigned char>(text_[pos_]))) fail("expected lowercase binder name");
      binders.push_back(read_word());
    }
    if (binders.empty()) fail("abstraction needs at least one binder");
    ++pos_;  // '.'
    SourceTerm body = parse_term();
    for (auto it = binders.rbegin(); it != binders.rend(); ++it) body = SourceTerm::abs(*it, std::move(body));
    return body;
  }

  SourceTerm parse_app() {
    skip_space();
    if (!at_atom_start()) {
      if (at_end()) fail("unexpected end of input");
      fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    }
    SourceTerm result = parse_atom();
    while (true) {
      skip_space();
      if (at_lambda()) return SourceTerm::app(std::move(result), parse_abs());
      if (!at_atom_start()) return result;
      result = SourceTerm::app(std::move(result), parse_atom());
    }
  }

  SourceTerm parse_atom() {
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      SourceTerm inner = parse_term();
      skip_space();
      if (at_end() || text_[pos_] != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    std::size_t start = pos_;
    std::string word = read_word();
    if (std::islower(static_cast<unsigned char>(word[0]))) return SourceTerm::var(std::move(word));
    if (word == "H") return SourceTerm::h();
    if (options_.constants) {
      if (auto t = options_.constants(word)) {
        if (!t->is_closed()) fail("constant '" + word + "' is not closed");
        return from_debruijn(*t);
      }
    }
    pos_ = start;
    fail("unknown constant '" + word + "'");
  }

  std::string_view text_;
  const ParseOptions& options_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline SourceTerm parse(std::string_view text, const ParseOptions& options = {}) {
  return detail::Parser(text, options).parse_all();
}

// Free identifiers in order of first occurrence.
inline std::vector<std::string> free_identifiers(const SourceTerm& s) {
  std::vector<std::string> out;
  std::vector<std::string> scope;
  std::function<void(const SourceTerm&)> go = [&](const SourceTerm& t) {
    switch (t.kind) {
      case SourceTerm::Kind::Var:
        if (std::find(scope.begin(), scope.end(), t.name) == scope.end() &&
            std::find(out.begin(), out.end(), t.name) == out.end()) {
          out.push_back(t.name);
        }
        break;
      case SourceTerm::Kind::Abs:
        scope.push_back(t.name);
        go(*t.left);
        scope.pop_back();
        break;
      case SourceTerm::Kind::App:
        go(*t.left);
        go(*t.right);
        break;
      case SourceTerm::Kind::H:
        break;
    }
  };
  go(s);
  return out;
}

// Free identifier free_names[j] becomes de Bruijn index depth + j.
inline Term to_debruijn(const SourceTerm& s, const std::vector<std::string>& free_names = {}) {
  std::vector<std::string> scope;  // innermost binder last
  std::function<Term(const SourceTerm&)> go = [&](const SourceTerm& t) -> Term {
    switch (t.kind) {
      case SourceTerm::Kind::Var: {
        for (std::size_t i = scope.size(); i-- > 0;) {
          if (scope[i] == t.name) return Term::var(static_cast<std::uint32_t>(scope.size() - 1 - i));
        }
        auto it = std::find(free_names.begin(), free_names.end(), t.name);
        if (it == free_names.end()) throw UnboundVariable(t.name);
        return Term::var(static_cast<std::uint32_t>(scope.size() + (it - free_names.begin())));
      }
      case SourceTerm::Kind::Abs: {
        scope.push_back(t.name);
        Term body = go(*t.left);
        scope.pop_back();
        return Term::abs(body);
      }
      case SourceTerm::Kind::App:
        return Term::app(go(*t.left), go(*t.right));
      case SourceTerm::Kind::H:
        break;
    }
    return Term::h();
  };
  return go(s);
}

namespace detail {

inline std::string free_name(std::uint32_t j, const std::vector<std::string>& free_names) {
  if (j < free_names.size()) return free_names[j];
  return "v" + std::to_string(j);
}

// First of x, y, z, u, v, w, x1, y1, ... not visible in scope.
inline std::string fresh_binder(const std::vector<std::string>& scope, const std::vector<std::string>& free_names,
                                std::uint32_t free_count) {
  static constexpr const char* kBase[] = {"x", "y", "z", "u", "v", "w"};
  auto taken = [&](const std::string& n) {
    if (std::find(scope.begin(), scope.end(), n) != scope.end()) return true;
    for (std::uint32_t j = 0; j < free_count; ++j) {
      if (free_name(j, free_names) == n) return true;
    }
    return false;
  };
  for (std::size_t round = 0;; ++round) {
    for (const char* base : kBase) {
      std::string candidate = round == 0 ? std::string(base) : base + std::to_string(round);
      if (!taken(candidate)) return candidate;
    }
  }
}

}  // namespace detail

// Binder names never shadow an enclosing binder or a free name, so the
// result converts back to `t` under the same free names.
inline SourceTerm from_debruijn(const Term& t, const std::vector<std::string>& free_names) {
  const std::uint32_t free_count = std::max<std::uint32_t>(t.loose(), static_cast<std::uint32_t>(free_names.size()));
  std::vector<std::string> scope;
  std::function<SourceTerm(const Term&)> go = [&](const Term& u) -> SourceTerm {
    switch (u.kind()) {
      case Term::Kind::Var: {
        const std::uint32_t i = u.index();
        if (i < scope.size()) return SourceTerm::var(scope[scope.size() - 1 - i]);
        return SourceTerm::var(detail::free_name(i - static_cast<std::uint32_t>(scope.size()), free_names));
      }
      case Term::Kind::Abs: {
        std::string binder = detail::fresh_binder(scope, free_names, free_count);
        scope.push_back(binder);
        SourceTerm body = go(u.body());
        scope.pop_back();
        return SourceTerm::abs(std::move(binder), std::move(body));
      }
      case Term::Kind::App:
        return SourceTerm::app(go(u.fun()), go(u.arg()));
      case Term::Kind::H:
        break;
    }
    return SourceTerm::h();
  };
  return go(t);
}

namespace detail {

inline void print_source(const SourceTerm& t, std::string& out);

inline void print_operand(const SourceTerm& t, bool argument_position, std::string& out) {
  const bool parens = t.kind == SourceTerm::Kind::Abs || (argument_position && t.kind == SourceTerm::Kind::App);
  if (parens) out += '(';
  print_source(t, out);
  if (parens) out += ')';
}

inline void print_source(const SourceTerm& t, std::string& out) {
  switch (t.kind) {
    case SourceTerm::Kind::Var:
      out += t.name;
      break;
    case SourceTerm::Kind::H:
      out += 'H';
      break;
    case SourceTerm::Kind::Abs: {
      out += '\\';
      const SourceTerm* cur = &t;
      bool first = true;
      while (cur->kind == SourceTerm::Kind::Abs) {
        if (!first) out += ' ';
        out += cur->name;
        first = false;
        cur = cur->left.get();
      }
      out += '.';
      print_source(*cur, out);
      break;
    }
    case SourceTerm::Kind::App:
      print_operand(*t.left, false, out);
      out += ' ';
      print_operand(*t.right, true, out);
      break;
  }
}

}  // namespace detail

inline std::string print(const SourceTerm& t) {
  std::string out;
  detail::print_source(t, out);
  return out;
}

inline std::string print(const Term& t, const std::vector<std::string>& free_names = {}) {
  return print(from_debruijn(t, free_names));
}

// Parses `text` and converts it over `free_names`; with no names given, free
// identifiers are declared in order of first occurrence.
inline Term parse_term(std::string_view text, const std::vector<std::string>& free_names, const ParseOptions& options = {}) {
  return to_debruijn(parse(text, options), free_names);
}

struct ParsedTerm {
  Term term;
  std::vector<std::string> free_names;
};

inline ParsedTerm parse_open_term(std::string_view text, const ParseOptions& options = {}) {
  SourceTerm s = parse(text, options);
  std::vector<std::string> names = free_identifiers(s);
  return {to_debruijn(s, names), std::move(names)};
}

}  // namespace lambdah

#endif  // LAMBDAH_SYNTAX_HPP
