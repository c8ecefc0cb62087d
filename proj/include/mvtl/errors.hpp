#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace mvtl {

/// Broad failure classes; the command-line tool maps them onto exit codes.
enum class error_class { syntax, semantic, guard };

class error : public std::runtime_error {
 public:
  error(error_class cls, const std::string& what) : std::runtime_error(what), cls_(cls) {}
  error_class cls() const noexcept { return cls_; }

 private:
  error_class cls_;
};

// {{{ syntax errors

class syntax_error : public error {
 public:
  syntax_error(const std::string& msg, std::size_t pos)
      : error(error_class::syntax, msg + " at position " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const noexcept { return pos_; }

  /// Error inside a line-oriented input file.
  static syntax_error in_line(std::size_t line, const std::string& msg) {
    return syntax_error(raw{}, line_prefix(line) + msg, 0);
  }

 protected:
  struct raw {};
  syntax_error(raw, const std::string& full, std::size_t pos) : error(error_class::syntax, full), pos_(pos) {}
  static std::string line_prefix(std::size_t line) { return "line " + std::to_string(line) + ": "; }

 private:
  std::size_t pos_;
};

class nested_typicality_error : public syntax_error {
 public:
  explicit nested_typicality_error(std::size_t pos)
      : syntax_error("typicality operator T nested inside T", pos) {}
  nested_typicality_error(const nested_typicality_error& inner, std::size_t line)
      : syntax_error(raw{}, line_prefix(line) + inner.what(), inner.position()) {}
};

class threshold_range_error : public syntax_error {
 public:
  threshold_range_error(const std::string& text, std::size_t pos)
      : syntax_error("threshold " + text + " outside [0,1]", pos) {}
  threshold_range_error(const threshold_range_error& inner, std::size_t line)
      : syntax_error(raw{}, line_prefix(line) + inner.what(), inner.position()) {}
};

// }}}

// {{{ semantic errors

class semantic_error : public error {
 public:
  explicit semantic_error(const std::string& msg) : error(error_class::semantic, msg) {}
};

class missing_preference_error : public semantic_error {
 public:
  explicit missing_preference_error(const std::string& key)
      : semantic_error("no preference relation for \"" + key + "\""), key_(key) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

class missing_prop_error : public semantic_error {
 public:
  missing_prop_error(const std::string& prop, const std::string& world)
      : semantic_error("no value for proposition '" + prop + "' in world " + world) {}
};

class temporal_operator_error : public semantic_error {
 public:
  explicit temporal_operator_error(const std::string& formula)
      : semantic_error("temporal operator in non-temporal evaluation: " + formula) {}
};

class non_idempotent_algebra_error : public semantic_error {
 public:
  explicit non_idempotent_algebra_error(const std::string& algebra)
      : semantic_error("unbounded temporal operators need an idempotent algebra; got " + algebra) {}
};

/// Malformed model content: an invalid preference relation, unknown world, bad lasso shape.
class model_error : public semantic_error {
 public:
  explicit model_error(const std::string& msg) : semantic_error(msg) {}
};

// }}}

// {{{ guard violations

class space_too_large_error : public error {
 public:
  space_too_large_error(const std::string& what, double cardinality)
      : error(error_class::guard, what + " (cardinality " + format(cardinality) + ")"),
        cardinality_(cardinality) {}
  double cardinality() const noexcept { return cardinality_; }

 private:
  static std::string format(double c) {
    if (c < 1e18) return std::to_string(static_cast<std::uint64_t>(c));
    return std::to_string(c);
  }
  double cardinality_;
};

class horizon_exceeded_error : public error {
 public:
  explicit horizon_exceeded_error(std::size_t steps)
      : error(error_class::guard,
              "no repeated labelling within " + std::to_string(steps) + " steps") {}
};

// }}}

}  // namespace mvtl
