#include "charp/parse.hpp"

#include <cctype>
#include <limits>
#include <sstream>

namespace charp {

ParseError::ParseError(const std::string& what, std::size_t line, std::size_t column)
    : InputError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

namespace {

class Cursor {
 public:
  Cursor(std::string_view text, std::size_t line, std::size_t offset)
      : text_(text), line_(line), offset_(offset) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  std::size_t column() const { return offset_ + pos_ + 1; }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, line_, column()); }
  [[noreturn]] void fail_at(const std::string& what, std::size_t col) const {
    throw ParseError(what, line_, col);
  }

  bool at_digit() { return std::isdigit(static_cast<unsigned char>(peek())) != 0; }
  bool at_alpha() {
    char c = peek();
    return std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_';
  }

  std::uint64_t integer(const char* what) {
    skip_ws();
    std::size_t start = pos_;
    std::uint64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      unsigned d = static_cast<unsigned>(text_[pos_] - '0');
      if (v > (std::numeric_limits<std::uint64_t>::max() - d) / 10) fail_at(std::string(what) + " too large", offset_ + start + 1);
      v = v * 10 + d;
      ++pos_;
    }
    if (pos_ == start) fail(std::string("expected ") + what);
    return v;
  }

  std::string identifier() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) != 0 || text_[pos_] == '_')) {
      ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

 private:
  std::string_view text_;
  std::size_t line_;
  std::size_t offset_;
  std::size_t pos_ = 0;
};

Polynomial parse_term(const RingPtr& ring, Cursor& cur) {
  const auto& p = ring->modulus;
  Residue coef = 1;
  Monomial mono;
  for (bool first = true;; first = false) {
    if (!first && !cur.accept('*')) break;
    if (cur.at_digit()) {
      std::size_t col = cur.column();
      std::uint64_t c = cur.integer("coefficient");
      if (c >= p.value()) {
        cur.fail_at("coefficient " + std::to_string(c) + " is not below p = " + std::to_string(p.value()), col);
      }
      coef = p.mul(coef, static_cast<Residue>(c));
    } else if (cur.at_alpha()) {
      std::size_t col = cur.column();
      std::string name = cur.identifier();
      auto idx = ring->vars.index_of(name);
      if (!idx) cur.fail_at("unknown identifier '" + name + "'", col);
      std::uint64_t e = 1;
      if (cur.accept('^')) {
        if (!cur.at_digit()) cur.fail("bad exponent");
        std::size_t ecol = cur.column();
        e = cur.integer("exponent");
        if (e > std::numeric_limits<Exponent>::max() - mono[*idx]) cur.fail_at("bad exponent: too large", ecol);
      }
      mono.set(*idx, static_cast<Exponent>(mono[*idx] + e));
    } else {
      cur.fail(cur.at_end() ? "unexpected end of expression" : std::string("unexpected character '") + cur.peek() + "'");
    }
  }
  return Polynomial::monomial(ring, mono, coef);
}

Polynomial parse_sum(const RingPtr& ring, Cursor& cur) {
  Polynomial acc(ring);
  bool negative = false;
  if (cur.accept('-')) {
    negative = true;
  } else {
    cur.accept('+');
  }
  for (;;) {
    Polynomial t = parse_term(ring, cur);
    acc += negative ? -t : t;
    if (cur.accept('+')) {
      negative = false;
    } else if (cur.accept('-')) {
      negative = true;
    } else {
      break;
    }
  }
  return acc;
}

std::size_t first_non_space(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  return i;
}

}  // namespace

Polynomial parse_polynomial(const RingPtr& ring, std::string_view text, std::size_t line,
                            std::size_t column_offset) {
  Cursor cur(text, line, column_offset);
  if (cur.at_end()) cur.fail("empty expression");
  Polynomial out = parse_sum(ring, cur);
  if (!cur.at_end()) cur.fail(std::string("unexpected character '") + cur.peek() + "'");
  return out;
}

std::vector<Polynomial> parse_polynomial_list(const RingPtr& ring, std::string_view text,
                                              std::size_t line, std::size_t column_offset) {
  Cursor cur(text, line, column_offset);
  std::vector<Polynomial> out;
  if (cur.at_end()) cur.fail("empty expression");
  for (;;) {
    out.push_back(parse_sum(ring, cur));
    if (!cur.accept(',')) break;
  }
  if (!cur.at_end()) cur.fail(std::string("unexpected character '") + cur.peek() + "'");
  return out;
}

RingDecl parse_ring_header(std::string_view line, std::size_t line_no) {
  std::istringstream in{std::string(line)};
  std::string word;
  in >> word;
  if (word != "ring") throw ParseError("expected 'ring' header", line_no, first_non_space(line) + 1);
  std::optional<std::uint64_t> p;
  std::optional<std::vector<std::string>> vars;
  MonomialOrder order = MonomialOrder::grevlex;
  std::uint32_t jet = 12;
  while (in >> word) {
    std::size_t col = line.find(word) + 1;
    auto eq = word.find('=');
    if (eq == std::string::npos) throw ParseError("expected key=value, got '" + word + "'", line_no, col);
    std::string key = word.substr(0, eq), value = word.substr(eq + 1);
    try {
      if (key == "p") {
        std::size_t used = 0;
        p = std::stoull(value, &used);
        if (used != value.size()) throw InputError("bad integer");
        PrimeModulus check(*p);
      } else if (key == "vars") {
        std::vector<std::string> names;
        std::size_t start = 0;
        for (;;) {
          auto comma = value.find(',', start);
          names.push_back(value.substr(start, comma - start));
          if (comma == std::string::npos) break;
          start = comma + 1;
        }
        VarSet check(names);
        vars = std::move(names);
      } else if (key == "order") {
        order = parse_order(value);
      } else if (key == "jet") {
        std::size_t used = 0;
        auto j = std::stoul(value, &used);
        if (used != value.size() || j < 1 || j > 100000) throw InputError("bad jet precision");
        jet = static_cast<std::uint32_t>(j);
      } else {
        throw InputError("unknown header key '" + key + "'");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw ParseError(std::string(e.what()) + " in '" + word + "'", line_no, col);
    }
  }
  if (!p) throw ParseError("ring header needs p=<prime>", line_no, 1);
  if (!vars) throw ParseError("ring header needs vars=<names>", line_no, 1);
  return RingDecl{make_ring(*p, std::move(*vars), order), JetPrecision(jet)};
}

std::string to_string(const RingDecl& decl) {
  std::string vars;
  for (const auto& n : decl.ring->vars.names()) vars += (vars.empty() ? "" : ",") + n;
  return "ring p=" + std::to_string(decl.ring->modulus.value()) + " vars=" + vars + " order=" +
         std::string(to_string(decl.ring->order)) + " jet=" + std::to_string(decl.jet.D);
}

const Polynomial& InputDocument::poly(const std::string& name) const {
  auto it = bindings.find(name);
  if (it == bindings.end()) throw InputError("no binding named '" + name + "'");
  if (it->second.size() != 1) throw InputError("'" + name + "' is a list, not a single polynomial");
  return it->second.front();
}

const std::vector<Polynomial>& InputDocument::list(const std::string& name) const {
  auto it = bindings.find(name);
  if (it == bindings.end()) throw InputError("no binding named '" + name + "'");
  return it->second;
}

InputDocument parse_input(std::string_view text) {
  std::optional<RingDecl> decl;
  std::map<std::string, std::vector<Polynomial>> bindings;
  std::vector<std::string> names;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto nl = text.find('\n', start);
    std::string_view line = text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
    start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (first_non_space(line) == line.size()) continue;
    if (!decl) {
      decl = parse_ring_header(line, line_no);
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected 'name = expression'", line_no, first_non_space(line) + 1);
    std::string_view lhs = line.substr(0, eq);
    std::size_t lead = first_non_space(lhs);
    std::string name(lhs.substr(lead));
    while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back()))) name.pop_back();
    if (!is_identifier(name)) throw ParseError("invalid binding name '" + name + "'", line_no, lead + 1);
    if (bindings.count(name)) throw ParseError("duplicate binding '" + name + "'", line_no, lead + 1);
    bindings.emplace(name, parse_polynomial_list(decl->ring, line.substr(eq + 1), line_no, eq + 1));
    names.push_back(name);
  }
  if (!decl) throw ParseError("missing ring header", 1, 1);
  return InputDocument{*decl, std::move(bindings), std::move(names)};
}

}  // namespace charp
