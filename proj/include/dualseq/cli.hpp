#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "dualseq/dualnum.hpp"
#include "dualseq/errors.hpp"
#include "dualseq/hom.hpp"
#include "dualseq/phantom.hpp"
#include "dualseq/seq.hpp"

namespace dualseq {

/// Syntax error at a 1-based line and column.
class ParseError : public ValidationError {
 public:
  ParseError(int line, int column, const std::string& message);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

struct NamedMorphism {
  std::string source;
  std::string target;
  HatMorphism morphism;
};

struct NamedDerivation {
  std::string diagram;
  Derivation values;
};

/// Parsed input file; every reference is resolved and validated on load.
struct Document {
  Field field;
  std::map<std::string, Seq> seqs;
  std::map<std::string, EpsComplex> complexes;
  std::map<std::string, NamedMorphism> morphisms;
  std::map<std::string, Diagram> diagrams;
  std::map<std::string, NamedDerivation> derivations;
};

Document parse_document(std::string_view text);

/// "[1 2; 3 4]", or "[]" when a dimension is zero.
std::string matrix_literal(const Matrix& m);
/// Seq block in the document grammar.
std::string seq_to_text(const std::string& name, const Seq& v);
/// Morphism block in the document grammar.
std::string morphism_to_text(const std::string& name, const std::string& source, const std::string& target,
                             const HatMorphism& h);

nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j, const Field& f, std::size_t rows, std::size_t cols);
nlohmann::json seq_to_json(const Seq& v);
Seq seq_from_json(const nlohmann::json& j, const Field& f);
nlohmann::json graded_to_json(const GradedHomElement& g);
GradedHomElement graded_from_json(const nlohmann::json& j, const Seq& source, const Seq& target);
nlohmann::json complex_to_json(const EpsComplex& c);
EpsComplex complex_from_json(const nlohmann::json& j, const Field& f);

inline constexpr int kJsonSchema = 1;

/// Runs `dualseq <command> <document> <args...> [--json] [--depth N]`.
/// args excludes the program name. Exit codes: 0 success, 1 parse or
/// validation error (including a derivation that fails Leibniz), 2
/// StabilizationDepthExceeded.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dualseq
