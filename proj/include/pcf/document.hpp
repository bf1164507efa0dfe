#pragma once

// JSON matrix documents:
//   {"field": "rational", "rows": [["1", "1/2"], ["0", "-3"]]}
//   {"field": "complex",  "rows": [[[1, 0], [0.5, 0]], ...], "abs_eps": 1e-10}
// Rational literals are "p" or "p/q" strings (bare integers accepted).
// Complex literals are [re, im] pairs or plain numbers.

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

#include <json.hpp>

#include "pcf/matrix.hpp"
#include "pcf/numeric.hpp"

namespace pcf::cli {

using Json = nlohmann::ordered_json;

enum class FieldKind { Rational, Complex };

std::string_view field_name(FieldKind f);

/// Malformed or inconsistent input; maps to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MatrixDocument {
  FieldKind field = FieldKind::Rational;
  std::variant<Matrix<Rational>, Matrix<ApproxComplex>> matrix;
  std::optional<double> abs_eps;
  std::optional<double> rel_eps;
  Json rows;  // the literals as written, echoed in reports

  std::size_t order() const;
};

/// Parses a document. `field_override` re-reads the literals in another field;
/// rational literals may be read as complex, not the other way round.
MatrixDocument parse_document(const std::string& text, std::optional<FieldKind> field_override = std::nullopt);
MatrixDocument load_document(const std::filesystem::path& path,
                             std::optional<FieldKind> field_override = std::nullopt);

Json scalar_to_json(const Rational& x);
Json scalar_to_json(const ApproxComplex& x);

template <Field T>
Json matrix_to_json(const Matrix<T>& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.order(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.order(); ++c) row.push_back(scalar_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace pcf::cli
