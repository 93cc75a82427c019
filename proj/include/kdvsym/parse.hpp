#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "kdvsym/context.hpp"
#include "kdvsym/expr.hpp"

namespace kdvsym {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position);
  std::size_t position() const { return position_; }
  const std::string& message() const { return message_; }

 private:
  std::size_t position_;
  std::string message_;
};

/// Raw tree for text; diff(...) is applied eagerly.
Node parse_node(std::string_view text, const Context& ctx);

/// parse_node followed by normalize.
Expr parse(std::string_view text, const Context& ctx);

}  // namespace kdvsym
