#include "pcf/document.hpp"

#include <fstream>
#include <sstream>

namespace pcf::cli {

std::string_view field_name(FieldKind f) { return f == FieldKind::Rational ? "rational" : "complex"; }

std::size_t MatrixDocument::order() const {
  return std::visit([](const auto& m) { return m.order(); }, matrix);
}

namespace {

Rational rational_literal(const Json& v) {
  if (v.is_string()) {
    try {
      return Rational::parse(v.get<std::string>());
    } catch (const DivisionByZero&) {
      throw InputError("zero denominator in literal \"" + v.get<std::string>() + "\"");
    } catch (const std::invalid_argument&) {
      throw InputError("not a rational literal: \"" + v.get<std::string>() + "\"");
    }
  }
  if (v.is_number_integer()) return Rational(mpz_class(v.dump()));
  throw InputError("rational entries must be \"p/q\" strings or integers, got " + v.dump());
}

ApproxComplex complex_literal(const Json& v) {
  try {
    if (v.is_array()) {
      if (v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        throw InputError("complex entries must be [re, im] number pairs, got " + v.dump());
      return {v[0].get<double>(), v[1].get<double>()};
    }
    if (v.is_number()) return {v.get<double>(), 0.0};
    if (v.is_string()) return FieldTraits<ApproxComplex>::from_rational(rational_literal(v));
  } catch (const NonFinite&) {
    throw InputError("non-finite complex entry " + v.dump());
  }
  throw InputError("complex entries must be [re, im] pairs, numbers or \"p/q\" strings, got " + v.dump());
}

template <class T, class Read>
Matrix<T> read_rows(const Json& rows, Read read) {
  const std::size_t q = rows.size();
  std::vector<T> entries;
  entries.reserve(q * q);
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != q) throw InputError("\"rows\" must form a square matrix");
    for (const auto& v : row) entries.push_back(read(v));
  }
  return Matrix<T>(q, std::move(entries));
}

std::optional<double> read_eps(const Json& doc, const char* key) {
  if (!doc.contains(key)) return std::nullopt;
  const auto& v = doc[key];
  if (!v.is_number() || v.get<double>() < 0.0) throw InputError(std::string("\"") + key + "\" must be a nonnegative number");
  return v.get<double>();
}

}  // namespace

MatrixDocument parse_document(const std::string& text, std::optional<FieldKind> field_override) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InputError("document must be a JSON object");

  MatrixDocument out;
  if (doc.contains("field")) {
    const auto& f = doc["field"];
    if (f == "rational")
      out.field = FieldKind::Rational;
    else if (f == "complex")
      out.field = FieldKind::Complex;
    else
      throw InputError("\"field\" must be \"rational\" or \"complex\"");
  }
  if (!doc.contains("rows") || !doc["rows"].is_array() || doc["rows"].empty())
    throw InputError("document needs a nonempty \"rows\" array");
  out.rows = doc["rows"];
  out.abs_eps = read_eps(doc, "abs_eps");
  out.rel_eps = read_eps(doc, "rel_eps");

  const FieldKind declared = out.field;
  if (field_override) {
    if (declared == FieldKind::Complex && *field_override == FieldKind::Rational)
      throw InputError("a complex document cannot be read in the rational field");
    out.field = *field_override;
  }
  if (out.field == FieldKind::Rational)
    out.matrix = read_rows<Rational>(out.rows, rational_literal);
  else
    out.matrix = read_rows<ApproxComplex>(out.rows, complex_literal);
  return out;
}

MatrixDocument load_document(const std::filesystem::path& path, std::optional<FieldKind> field_override) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_document(buf.str(), field_override);
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

Json scalar_to_json(const Rational& x) { return x.to_string(); }

Json scalar_to_json(const ApproxComplex& x) { return Json::array({x.re(), x.im()}); }

}  // namespace pcf::cli
