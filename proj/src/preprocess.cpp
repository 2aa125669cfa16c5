#include <cctype>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "rxsynth/error.hpp"
#include "rxsynth/examples.hpp"

namespace rxsynth {

namespace {

struct Rejected {
  std::string reason;
};

// Practical-regex syntax tree, just rich enough to re-emit toolkit syntax.
struct RawNode;
using RawAlt = std::vector<std::vector<std::unique_ptr<RawNode>>>;

struct RawNode {
  enum class Kind { Char, Class, Dot, Group } kind;
  char ch = 0;
  std::string class_text;  // Class: source text such as `[0-9]` or `\d`
  RawAlt group;
  std::string quantifiers;  // sequence of '*', '?', '+' after the atom
};

class RawParser {
 public:
  RawParser(std::string_view text, bool& widened) : text_(text), widened_(widened) {}

  RawAlt parse() {
    RawAlt alt = parse_alt();
    if (pos_ != text_.size()) throw Rejected{"unparseable"};
    return alt;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  bool& widened_;

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  RawAlt parse_alt() {
    RawAlt alt;
    alt.push_back(parse_seq());
    while (!at_end() && peek() == '|') {
      ++pos_;
      alt.push_back(parse_seq());
    }
    return alt;
  }

  std::vector<std::unique_ptr<RawNode>> parse_seq() {
    std::vector<std::unique_ptr<RawNode>> seq;
    while (!at_end() && peek() != '|' && peek() != ')') {
      auto atom = parse_atom();
      if (!atom) continue;  // anchor
      parse_quantifiers(*atom);
      seq.push_back(std::move(atom));
    }
    return seq;
  }

  std::unique_ptr<RawNode> parse_atom() {
    auto node = std::make_unique<RawNode>();
    char c = text_[pos_++];
    switch (c) {
      case '^':
      case '$':
        return nullptr;
      case '.':
        node->kind = RawNode::Kind::Dot;
        return node;
      case '*':
      case '+':
      case '?':
      case '{':
        throw Rejected{"unparseable"};
      case '(': {
        if (text_.substr(pos_, 1) == "?") {
          std::string_view rest = text_.substr(pos_);
          if (rest.starts_with("?=") || rest.starts_with("?!") || rest.starts_with("?<=") ||
              rest.starts_with("?<!"))
            throw Rejected{"lookaround"};
          if (rest.starts_with("?:")) {
            pos_ += 2;
          } else if (rest.starts_with("?P<") || rest.starts_with("?<")) {
            std::size_t close = text_.find('>', pos_);
            if (close == std::string_view::npos) throw Rejected{"unparseable"};
            pos_ = close + 1;
          } else if (rest.starts_with("?P=")) {
            throw Rejected{"backreference"};
          } else {
            throw Rejected{"unparseable"};
          }
        }
        node->kind = RawNode::Kind::Group;
        node->group = parse_alt();
        if (at_end() || peek() != ')') throw Rejected{"unparseable"};
        ++pos_;
        return node;
      }
      case '[': {
        if (!at_end() && peek() == '^') throw Rejected{"negated-class"};
        std::size_t start = pos_ - 1;
        // a ']' right after '[' is a member
        if (!at_end() && peek() == ']') ++pos_;
        while (!at_end() && peek() != ']') {
          if (peek() == '\\') ++pos_;
          ++pos_;
        }
        if (at_end()) throw Rejected{"unparseable"};
        ++pos_;
        node->kind = RawNode::Kind::Class;
        node->class_text = std::string(text_.substr(start, pos_ - start));
        return node;
      }
      case '\\': {
        if (at_end()) throw Rejected{"unparseable"};
        char e = text_[pos_++];
        if ((e >= '1' && e <= '9') || e == 'k') throw Rejected{"backreference"};
        if (e == 'D' || e == 'W' || e == 'S') throw Rejected{"negated-class"};
        if (e == 'b' || e == 'B' || e == 'A' || e == 'Z' || e == 'z') return nullptr;
        if (e == 'd' || e == 'w' || e == 's') {
          node->kind = RawNode::Kind::Class;
          node->class_text = std::string("\\") + e;
          return node;
        }
        node->kind = RawNode::Kind::Char;
        switch (e) {
          case 'n': node->ch = '\n'; break;
          case 't': node->ch = '\t'; break;
          case 'r': node->ch = '\r'; break;
          case 'f': node->ch = '\f'; break;
          case 'v': node->ch = '\v'; break;
          default: node->ch = e; break;
        }
        return node;
      }
      default:
        node->kind = RawNode::Kind::Char;
        node->ch = c;
        return node;
    }
  }

  void parse_quantifiers(RawNode& node) {
    while (!at_end()) {
      char c = peek();
      if (c == '*' || c == '+' || c == '?') {
        ++pos_;
        node.quantifiers.push_back(c);
        // lazy and possessive suffixes do not change the language
        if (!at_end() && (peek() == '?' || peek() == '+')) ++pos_;
      } else if (c == '{' && counted_quantifier()) {
        node.quantifiers.push_back('*');
        widened_ = true;
        if (!at_end() && (peek() == '?' || peek() == '+')) ++pos_;
      } else {
        return;
      }
    }
  }

  // Consumes `{n}`, `{n,}` or `{n,m}` at pos_; otherwise consumes nothing.
  bool counted_quantifier() {
    std::size_t p = pos_ + 1;
    auto digits = [&] {
      std::size_t s = p;
      while (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) ++p;
      return p > s;
    };
    if (!digits()) return false;
    if (p < text_.size() && text_[p] == ',') {
      ++p;
      digits();
    }
    if (p >= text_.size() || text_[p] != '}') return false;
    pos_ = p + 1;
    return true;
  }
};

class Emitter {
 public:
  std::map<char, std::string> table;
  std::string symbols;

  std::string emit(const RawAlt& alt) {
    std::string out;
    for (std::size_t i = 0; i < alt.size(); ++i) {
      if (i > 0) out += "+";
      std::string seq = emit_seq(alt[i]);
      out += seq.empty() ? "@epsilon" : seq;
    }
    return out;
  }

 private:
  std::map<std::string, char> reserved_;
  char next_reserved_ = 'A';
  std::string bang_;  // originals mapped to '!'

  void use(char c) {
    if (symbols.find(c) == std::string::npos) symbols.push_back(c);
  }

  char reserve(const std::string& original) {
    auto it = reserved_.find(original);
    if (it != reserved_.end()) return it->second;
    if (next_reserved_ > 'Z') throw Rejected{"too-many-reserved-symbols"};
    char c = next_reserved_++;
    reserved_[original] = c;
    table[c] = original;
    use(c);
    return c;
  }

  static bool plain_alnum(const RawNode& n) {
    return n.kind == RawNode::Kind::Char && n.quantifiers.empty() && std::isalnum(static_cast<unsigned char>(n.ch));
  }

  std::string emit_seq(const std::vector<std::unique_ptr<RawNode>>& seq) {
    std::string out;
    for (std::size_t i = 0; i < seq.size();) {
      std::size_t j = i;
      while (j < seq.size() && plain_alnum(*seq[j])) ++j;
      if (j - i >= 3) {
        std::string word;
        for (std::size_t k = i; k < j; ++k) word.push_back(seq[k]->ch);
        out.push_back(reserve(word));
        i = j;
        continue;
      }
      out += emit_atom(*seq[i]);
      ++i;
    }
    return out;
  }

  std::string atom_text(const RawNode& n) {
    switch (n.kind) {
      case RawNode::Kind::Dot:
        return ".";
      case RawNode::Kind::Class:
        return std::string(1, reserve(n.class_text));
      case RawNode::Kind::Group: {
        std::string inner = emit(n.group);
        return "(" + inner + ")";
      }
      case RawNode::Kind::Char: {
        unsigned char c = static_cast<unsigned char>(n.ch);
        if (std::isupper(c)) return std::string(1, reserve(std::string(1, n.ch)));
        if (std::isalnum(c)) {
          use(n.ch);
          return std::string(1, n.ch);
        }
        if (bang_.find(n.ch) == std::string::npos) {
          bang_.push_back(n.ch);
          table['!'] = bang_;
        }
        use('!');
        return "!";
      }
    }
    return {};
  }

  std::string emit_atom(const RawNode& n) {
    std::string atom = atom_text(n);
    if (atom.size() > 1 && !n.quantifiers.empty() && n.kind != RawNode::Kind::Group) atom = "(" + atom + ")";
    for (char q : n.quantifiers) {
      if (q == '+') {
        atom = "(" + atom + atom + "*)";
      } else {
        atom += q;
      }
    }
    return atom;
  }
};

}  // namespace

RawRegexRecord preprocess_raw(std::string_view source_text) {
  RawRegexRecord record;
  record.source_text = std::string(source_text);
  try {
    RawAlt tree = RawParser(source_text, record.widened).parse();
    Emitter emitter;
    std::string text = emitter.emit(tree);
    if (emitter.symbols.empty()) throw Rejected{"unparseable"};
    record.alphabet = Alphabet(emitter.symbols);
    record.regex = parse(text, record.alphabet);
    record.substitution_table = std::move(emitter.table);
  } catch (const Rejected& r) {
    record.rejection = r.reason;
    record.regex.reset();
  } catch (const Error&) {
    record.rejection = "unparseable";
    record.regex.reset();
  }
  return record;
}

}  // namespace rxsynth
