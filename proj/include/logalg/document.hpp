#pragma once

// JSON model documents: cell models (with attached step functions),
// passports and algebra descriptors.
//
//   {"version": 1, "kind": "cell-model" | "passport" | "algebra", "body": {...}}
//
// Rationals are "p/q" strings, integer or decimal strings, or JSON numbers
// (read through their shortest decimal form). Complex scalars are [re, im];
// matrices are row-major arrays of rows of such pairs.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "logalg/errors.hpp"
#include "logalg/isomorphism.hpp"
#include "logalg/measure_core.hpp"
#include "logalg/rearrangement.hpp"

namespace logalg {

using Json = nlohmann::json;

enum class DocumentKind { CellModel, Passport, Algebra };

std::string kindName(DocumentKind kind);

using Element = std::variant<StepFunction, MatrixStepFunction>;

struct CellModelBody {
  CellModel model;
  std::map<std::string, Element> elements;
  friend bool operator==(const CellModelBody&, const CellModelBody&) = default;
};

struct ModelDocument {
  int version = 1;
  DocumentKind kind = DocumentKind::Passport;
  std::variant<CellModelBody, Passport, AlgebraDescriptor> body;

  const CellModelBody& cellModel() const { return std::get<CellModelBody>(body); }
  const Passport& passport() const { return std::get<Passport>(body); }
  const AlgebraDescriptor& algebra() const { return std::get<AlgebraDescriptor>(body); }
};

bool operator==(const ModelDocument& a, const ModelDocument& b);

struct DocumentIssue {
  std::string path;  // JSON pointer ("" for syntax errors)
  std::string message;
  std::optional<std::size_t> line;
  std::optional<std::size_t> column;
};

/// Every syntax or semantic problem found in a document.
class DocumentError : public InputError {
 public:
  explicit DocumentError(std::vector<DocumentIssue> issues);
  const std::vector<DocumentIssue>& issues() const { return issues_; }

 private:
  std::vector<DocumentIssue> issues_;
};

/// Parses and fully validates a document. Throws DocumentError.
ModelDocument parseDocument(std::string_view text);

Json toJson(const ModelDocument& doc);
std::string serializeDocument(const ModelDocument& doc);

/// Deterministic JSON text: sorted keys, two-space indent, doubles printed
/// with 17 significant digits, non-finite doubles as "Infinity"/"-Infinity"/"NaN".
std::string writeJson(const Json& value);

/// 17-significant-digit rendering used in reports.
std::string formatDouble(double v);

}  // namespace logalg
