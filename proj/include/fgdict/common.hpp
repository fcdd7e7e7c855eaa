#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <variant>

namespace fgdict {

// Minimal result type for operations whose failure is an expected outcome.
template <class T, class E>
class Expected {
 public:
  Expected(T value) : v_(std::move(value)) {}
  Expected(E error) : v_(std::move(error)) {}

  bool ok() const { return std::holds_alternative<T>(v_); }
  explicit operator bool() const { return ok(); }

  const T& value() const& { return std::get<T>(v_); }
  T&& value() && { return std::get<T>(std::move(v_)); }
  const E& error() const& { return std::get<E>(v_); }
  E&& error() && { return std::get<E>(std::move(v_)); }

 private:
  std::variant<T, E> v_;
};

// Bug signals: these indicate contract violations, not expected outcomes.
struct FreeVariableError : std::runtime_error {
  explicit FreeVariableError(const std::string& name)
      : std::runtime_error("free variable: " + name) {}
};

struct InternalStuckError : std::runtime_error {
  explicit InternalStuckError(const std::string& witness)
      : std::runtime_error("irreducible non-value (stuck): " + witness) {}
};

struct UnboundMethodVarError : std::runtime_error {
  explicit UnboundMethodVarError(const std::string& name)
      : std::runtime_error("unbound method variable: " + name) {}
};

}  // namespace fgdict
