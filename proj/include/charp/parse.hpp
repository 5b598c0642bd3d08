#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "charp/errors.hpp"
#include "charp/jet.hpp"
#include "charp/poly.hpp"

namespace charp {

/// Grammar error carrying a 1-based line and column.
class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Parses `2*X0^3*X1 - X1 + 4` style text over the ring. Coefficients must be < p.
Polynomial parse_polynomial(const RingPtr& ring, std::string_view text, std::size_t line = 1,
                            std::size_t column_offset = 0);

/// Comma-separated polynomial list.
std::vector<Polynomial> parse_polynomial_list(const RingPtr& ring, std::string_view text,
                                              std::size_t line = 1, std::size_t column_offset = 0);

struct RingDecl {
  RingPtr ring;
  JetPrecision jet;
};

/// `ring p=<int> vars=<id,...> [order=lex|grevlex] [jet=<int>]`
RingDecl parse_ring_header(std::string_view line, std::size_t line_no = 1);
std::string to_string(const RingDecl& decl);

/// A ring header followed by `name = <poly>` or `name = <poly>, <poly>, ...` bindings.
/// Blank lines and `#` comments are ignored.
struct InputDocument {
  RingDecl decl;
  std::map<std::string, std::vector<Polynomial>> bindings;
  std::vector<std::string> names;  ///< binding names in file order

  /// Single-polynomial binding; throws InputError when absent or a list.
  const Polynomial& poly(const std::string& name) const;
  /// Generator list of a binding (a single polynomial is a one-generator list).
  const std::vector<Polynomial>& list(const std::string& name) const;
  bool has(const std::string& name) const { return bindings.count(name) > 0; }
};

InputDocument parse_input(std::string_view text);

}  // namespace charp
