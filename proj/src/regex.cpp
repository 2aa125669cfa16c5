#include "rxsynth/regex.hpp"

#include <cassert>
#include <cctype>

#include "rxsynth/error.hpp"

namespace rxsynth {

struct Regex::Node {
  RegexKind kind;
  int value = 0;  // symbol or hole id
  Regex a;        // left / inner
  Regex b;        // right
  std::size_t size = 1;
  std::size_t holes = 0;
  std::size_t hash = 0;
};

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

}  // namespace

Regex::Regex() : Regex(empty()) {}

Regex Regex::empty() {
  static const Regex r(std::make_shared<const Node>(Node{RegexKind::Empty, 0, null(), null(), 1, 0,
                                                         mix(0, static_cast<std::size_t>(RegexKind::Empty))}));
  return r;
}

Regex Regex::epsilon() {
  static const Regex r(std::make_shared<const Node>(Node{RegexKind::Epsilon, 0, null(), null(), 1, 0,
                                                         mix(0, static_cast<std::size_t>(RegexKind::Epsilon))}));
  return r;
}

Regex Regex::wildcard() {
  static const Regex r(std::make_shared<const Node>(Node{RegexKind::Wildcard, 0, null(), null(), 1, 0,
                                                         mix(0, static_cast<std::size_t>(RegexKind::Wildcard))}));
  return r;
}

Regex Regex::literal(char symbol) {
  auto v = static_cast<unsigned char>(symbol);
  return Regex(std::make_shared<const Node>(
      Node{RegexKind::Literal, v, null(), null(), 1, 0, mix(mix(0, 3), v)}));
}

Regex Regex::hole(int id) {
  return Regex(std::make_shared<const Node>(Node{RegexKind::Hole, id, null(), null(), 1, 1,
                                                 mix(mix(0, 8), static_cast<std::size_t>(id))}));
}

Regex Regex::alt(Regex left, Regex right) {
  std::size_t size = 1 + left.size() + right.size();
  std::size_t holes = left.hole_count() + right.hole_count();
  std::size_t h = mix(mix(mix(0, 4), left.node_->hash), right.node_->hash);
  return Regex(std::make_shared<const Node>(
      Node{RegexKind::Union, 0, std::move(left), std::move(right), size, holes, h}));
}

Regex Regex::concat(Regex left, Regex right) {
  std::size_t size = 1 + left.size() + right.size();
  std::size_t holes = left.hole_count() + right.hole_count();
  std::size_t h = mix(mix(mix(0, 5), left.node_->hash), right.node_->hash);
  return Regex(std::make_shared<const Node>(
      Node{RegexKind::Concat, 0, std::move(left), std::move(right), size, holes, h}));
}

Regex Regex::star(Regex inner) {
  std::size_t size = 1 + inner.size();
  std::size_t holes = inner.hole_count();
  std::size_t h = mix(mix(0, 6), inner.node_->hash);
  return Regex(std::make_shared<const Node>(Node{RegexKind::Star, 0, std::move(inner), null(), size, holes, h}));
}

Regex Regex::question(Regex inner) {
  std::size_t size = 1 + inner.size();
  std::size_t holes = inner.hole_count();
  std::size_t h = mix(mix(0, 7), inner.node_->hash);
  return Regex(
      std::make_shared<const Node>(Node{RegexKind::Question, 0, std::move(inner), null(), size, holes, h}));
}

Regex Regex::word(std::string_view word) {
  if (word.empty()) return epsilon();
  Regex r = literal(word[0]);
  for (std::size_t i = 1; i < word.size(); ++i) r = concat(r, literal(word[i]));
  return r;
}

Regex Regex::concat_all(const std::vector<Regex>& parts) {
  if (parts.empty()) return epsilon();
  Regex r = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) r = concat(r, parts[i]);
  return r;
}

RegexKind Regex::kind() const { return node_->kind; }
char Regex::symbol() const { return static_cast<char>(node_->value); }
int Regex::hole_id() const { return node_->value; }
const Regex& Regex::left() const { return node_->a; }
const Regex& Regex::right() const { return node_->b; }
const Regex& Regex::inner() const { return node_->a; }
std::size_t Regex::size() const { return node_->size; }
std::size_t Regex::hole_count() const { return node_->holes; }

bool operator==(const Regex& x, const Regex& y) {
  if (x.node_ == y.node_) return true;
  const auto& a = *x.node_;
  const auto& b = *y.node_;
  if (a.kind != b.kind || a.hash != b.hash || a.size != b.size || a.value != b.value) return false;
  switch (a.kind) {
    case RegexKind::Union:
    case RegexKind::Concat:
      return a.a == b.a && a.b == b.b;
    case RegexKind::Star:
    case RegexKind::Question:
      return a.a == b.a;
    default:
      return true;
  }
}

// ── Parser ──────────────────────────────────────────────────────────────

namespace {

/*
  union    := concat (('+' | '|') concat)*
  concat   := postfix postfix*
  postfix  := atom ('*' | '?')*
  atom     := symbol | '.' | '(' union ')' | '@epsilon' | '@empty' | '#' digits
*/
class Parser {
 public:
  Parser(std::string_view text, const Alphabet& alphabet) : text_(text), alphabet_(alphabet) {}

  Regex run() {
    skip_space();
    if (at_end()) throw SyntaxError("empty regex", pos_);
    Regex r = parse_union();
    skip_space();
    if (!at_end()) throw SyntaxError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    return r;
  }

 private:
  std::string_view text_;
  const Alphabet& alphabet_;
  std::size_t pos_ = 0;

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  bool starts_atom() {
    skip_space();
    if (at_end()) return false;
    char c = peek();
    return c == '(' || c == '.' || c == '@' || c == '#' || Alphabet::is_valid_symbol(c);
  }

  Regex parse_union() {
    Regex r = parse_concat();
    for (;;) {
      skip_space();
      if (at_end() || (peek() != '+' && peek() != '|')) return r;
      ++pos_;
      r = Regex::alt(r, parse_concat());
    }
  }

  Regex parse_concat() {
    if (!starts_atom()) {
      if (at_end()) throw SyntaxError("expected operand, found end of input", pos_);
      throw SyntaxError(std::string("expected operand, found '") + peek() + "'", pos_);
    }
    Regex r = parse_postfix();
    while (starts_atom()) r = Regex::concat(r, parse_postfix());
    return r;
  }

  Regex parse_postfix() {
    Regex r = parse_atom();
    for (;;) {
      skip_space();
      if (at_end()) return r;
      if (peek() == '*') {
        r = Regex::star(r);
      } else if (peek() == '?') {
        r = Regex::question(r);
      } else {
        return r;
      }
      ++pos_;
    }
  }

  Regex parse_atom() {
    std::size_t start = pos_;
    char c = peek();
    if (c == '(') {
      ++pos_;
      Regex r = parse_union();
      skip_space();
      if (at_end() || peek() != ')') throw SyntaxError("missing ')'", pos_);
      ++pos_;
      return r;
    }
    if (c == '.') {
      ++pos_;
      return Regex::wildcard();
    }
    if (c == '@') {
      if (text_.substr(pos_, 8) == "@epsilon") {
        pos_ += 8;
        return Regex::epsilon();
      }
      if (text_.substr(pos_, 6) == "@empty") {
        pos_ += 6;
        return Regex::empty();
      }
      throw SyntaxError("unknown @-token", start);
    }
    if (c == '#') {
      ++pos_;
      std::size_t digits_start = pos_;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      if (pos_ == digits_start) throw SyntaxError("hole needs a numeric id", start);
      return Regex::hole(std::stoi(std::string(text_.substr(digits_start, pos_ - digits_start))));
    }
    if (!alphabet_.contains(c)) {
      throw AlphabetError(std::string("symbol '") + c + "' at position " + std::to_string(pos_) +
                          " is not in the alphabet");
    }
    ++pos_;
    return Regex::literal(c);
  }
};

// ── Printer ─────────────────────────────────────────────────────────────

int precedence(const Regex& r) {
  switch (r.kind()) {
    case RegexKind::Union:
      return 1;
    case RegexKind::Concat:
      return 2;
    case RegexKind::Star:
    case RegexKind::Question:
      return 3;
    default:
      return 4;
  }
}

void print(const Regex& r, std::string& out);

void print_wrapped(const Regex& r, bool wrap, std::string& out) {
  if (wrap) out += '(';
  print(r, out);
  if (wrap) out += ')';
}

void print(const Regex& r, std::string& out) {
  switch (r.kind()) {
    case RegexKind::Empty:
      out += "@empty";
      break;
    case RegexKind::Epsilon:
      out += "@epsilon";
      break;
    case RegexKind::Literal:
      out += r.symbol();
      break;
    case RegexKind::Wildcard:
      out += '.';
      break;
    case RegexKind::Hole:
      out += '#';
      out += std::to_string(r.hole_id());
      break;
    case RegexKind::Union:
      print_wrapped(r.left(), precedence(r.left()) < 1, out);
      out += '+';
      print_wrapped(r.right(), precedence(r.right()) <= 1, out);
      break;
    case RegexKind::Concat:
      print_wrapped(r.left(), precedence(r.left()) < 2, out);
      print_wrapped(r.right(), precedence(r.right()) <= 2, out);
      break;
    case RegexKind::Star:
      print_wrapped(r.inner(), precedence(r.inner()) < 3, out);
      out += '*';
      break;
    case RegexKind::Question:
      print_wrapped(r.inner(), precedence(r.inner()) < 3, out);
      out += '?';
      break;
  }
}

// ── Simplifier ──────────────────────────────────────────────────────────

// One rewrite at the root, assuming both children are already normal.
// Returns true if `r` changed.
bool rewrite_root(Regex& r) {
  switch (r.kind()) {
    case RegexKind::Union: {
      const Regex& a = r.left();
      const Regex& b = r.right();
      if (a.is(RegexKind::Empty)) {
        r = Regex(b);
        return true;
      }
      if (b.is(RegexKind::Empty) || a == b) {
        r = Regex(a);
        return true;
      }
      return false;
    }
    case RegexKind::Concat: {
      const Regex& a = r.left();
      const Regex& b = r.right();
      if (a.is(RegexKind::Empty) || b.is(RegexKind::Empty)) {
        r = Regex::empty();
        return true;
      }
      if (b.is(RegexKind::Epsilon)) {
        r = Regex(a);
        return true;
      }
      if (a.is(RegexKind::Epsilon)) {
        r = Regex(b);
        return true;
      }
      return false;
    }
    case RegexKind::Star: {
      const Regex& x = r.inner();
      if (x.is(RegexKind::Star)) {
        r = Regex(x);
        return true;
      }
      if (x.is(RegexKind::Question)) {
        r = Regex::star(x.inner());
        return true;
      }
      if (x.is(RegexKind::Epsilon) || x.is(RegexKind::Empty)) {
        r = Regex::epsilon();
        return true;
      }
      return false;
    }
    case RegexKind::Question: {
      const Regex& x = r.inner();
      if (x.is(RegexKind::Question) || x.is(RegexKind::Star)) {
        r = Regex(x);
        return true;
      }
      if (x.is(RegexKind::Epsilon) || x.is(RegexKind::Empty)) {
        r = Regex::epsilon();
        return true;
      }
      return false;
    }
    default:
      return false;
  }
}

Regex simplify_rec(const Regex& r) {
  Regex out = r;
  switch (r.kind()) {
    case RegexKind::Union:
    case RegexKind::Concat: {
      Regex a = simplify_rec(r.left());
      Regex b = simplify_rec(r.right());
      if (!a.same_node(r.left()) || !b.same_node(r.right())) {
        out = r.is(RegexKind::Union) ? Regex::alt(a, b) : Regex::concat(a, b);
      }
      break;
    }
    case RegexKind::Star:
    case RegexKind::Question: {
      Regex x = simplify_rec(r.inner());
      if (!x.same_node(r.inner())) out = r.is(RegexKind::Star) ? Regex::star(x) : Regex::question(x);
      break;
    }
    default:
      return r;
  }
  while (rewrite_root(out)) {
  }
  return out;
}

void spine(const Regex& r, std::vector<Regex>& out) {
  if (r.is(RegexKind::Concat)) {
    spine(r.left(), out);
    spine(r.right(), out);
  } else {
    out.push_back(r);
  }
}

void collect_symbols(const Regex& r, std::string& out) {
  switch (r.kind()) {
    case RegexKind::Literal:
      if (out.find(r.symbol()) == std::string::npos) out += r.symbol();
      break;
    case RegexKind::Union:
    case RegexKind::Concat:
      collect_symbols(r.left(), out);
      collect_symbols(r.right(), out);
      break;
    case RegexKind::Star:
    case RegexKind::Question:
      collect_symbols(r.inner(), out);
      break;
    default:
      break;
  }
}

}  // namespace

Regex parse(std::string_view text, const Alphabet& alphabet) { return Parser(text, alphabet).run(); }

std::string to_text(const Regex& r) {
  std::string out;
  out.reserve(r.size() * 2);
  print(r, out);
  return out;
}

Regex simplify(const Regex& r) {
  Regex cur = simplify_rec(r);
  for (;;) {
    Regex next = simplify_rec(cur);
    if (next == cur) return cur;
    cur = next;
  }
}

std::vector<Regex> concat_spine(const Regex& r) {
  std::vector<Regex> out;
  spine(r, out);
  return out;
}

std::string literal_symbols(const Regex& r) {
  std::string out;
  collect_symbols(r, out);
  return out;
}

}  // namespace rxsynth
