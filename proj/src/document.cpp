#include "logalg/document.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace logalg {

std::string kindName(DocumentKind kind) {
  switch (kind) {
    case DocumentKind::CellModel: return "cell-model";
    case DocumentKind::Passport: return "passport";
    case DocumentKind::Algebra: return "algebra";
  }
  return "unknown";
}

bool operator==(const ModelDocument& a, const ModelDocument& b) {
  if (a.version != b.version || a.kind != b.kind || a.body.index() != b.body.index()) return false;
  if (a.kind == DocumentKind::CellModel) {
    const auto& x = a.cellModel();
    const auto& y = b.cellModel();
    return x.model == y.model && x.elements == y.elements;
  }
  return a.body == b.body;
}

namespace {

std::string joinMessages(const std::vector<DocumentIssue>& issues) {
  std::string out;
  for (const auto& issue : issues) {
    if (!out.empty()) out += "; ";
    if (issue.line) out += "line " + std::to_string(*issue.line) + ", column " + std::to_string(*issue.column) + ": ";
    else out += (issue.path.empty() ? std::string("/") : issue.path) + ": ";
    out += issue.message;
  }
  return out;
}

std::string escapePointer(const std::string& key) {
  std::string out;
  for (char ch : key) {
    if (ch == '~') out += "~0";
    else if (ch == '/') out += "~1";
    else out += ch;
  }
  return out;
}

std::string at(const std::string& path, const std::string& key) { return path + "/" + escapePointer(key); }
std::string at(const std::string& path, std::size_t index) { return path + "/" + std::to_string(index); }

class Reader {
 public:
  std::vector<DocumentIssue> issues;

  void fail(const std::string& path, const std::string& message) { issues.push_back({path, message, {}, {}}); }

  const Json* member(const Json& obj, const std::string& path, const std::string& key, bool required) {
    if (!obj.is_object()) return nullptr;
    auto it = obj.find(key);
    if (it == obj.end()) {
      if (required) fail(at(path, key), "missing required field");
      return nullptr;
    }
    return &*it;
  }

  bool expectObject(const Json& j, const std::string& path) {
    if (j.is_object()) return true;
    fail(path, "expected an object");
    return false;
  }

  bool expectArray(const Json& j, const std::string& path) {
    if (j.is_array()) return true;
    fail(path, "expected an array");
    return false;
  }

  std::optional<Rational> rational(const Json& j, const std::string& path) {
    try {
      if (j.is_number_integer()) return j.is_number_unsigned() ? Rational(j.get<std::uint64_t>()) : Rational(j.get<std::int64_t>());
      if (j.is_number_float()) return parseRational(j.dump());
      if (j.is_string()) return parseRational(j.get<std::string>());
    } catch (const InputError& e) {
      fail(path, e.what());
      return std::nullopt;
    }
    fail(path, "expected a rational (\"p/q\", decimal string or number)");
    return std::nullopt;
  }

  std::optional<std::int64_t> integer(const Json& j, const std::string& path) {
    if (j.is_number_integer() && !(j.is_number_unsigned() && j.get<std::uint64_t>() > INT64_MAX))
      return j.get<std::int64_t>();
    fail(path, "expected an integer");
    return std::nullopt;
  }

  std::optional<double> real(const Json& j, const std::string& path) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
      if (auto r = rational(j, path)) return toDouble(*r);
      return std::nullopt;
    }
    fail(path, "expected a number");
    return std::nullopt;
  }

  std::optional<Complex> complex(const Json& j, const std::string& path) {
    if (j.is_number() || j.is_string()) {
      if (auto re = real(j, path)) return Complex(*re, 0.0);
      return std::nullopt;
    }
    if (!j.is_array() || j.size() != 2) {
      fail(path, "expected a complex scalar [re, im]");
      return std::nullopt;
    }
    auto re = real(j[0], at(path, 0));
    auto im = real(j[1], at(path, 1));
    if (!re || !im) return std::nullopt;
    return Complex(*re, *im);
  }

  std::optional<ClosedForm> closedForm(const Json& j, const std::string& path) {
    if (!expectObject(j, path)) return std::nullopt;
    ClosedForm form;
    bool ok = true;
    if (const Json* c = member(j, path, "c", true)) {
      if (auto v = rational(*c, at(path, "c"))) form.c = *v; else ok = false;
    } else {
      ok = false;
    }
    if (const Json* p = member(j, path, "p", false)) {
      if (auto v = rational(*p, at(path, "p"))) form.p = *v; else ok = false;
    }
    if (const Json* q = member(j, path, "q", false)) {
      if (auto v = rational(*q, at(path, "q"))) form.q = *v; else ok = false;
    }
    for (const auto& [key, _] : j.items())
      if (key != "c" && key != "p" && key != "q") fail(at(path, key), "unknown field");
    if (!ok) return std::nullopt;
    std::vector<std::string> problems;
    validateClosedForm(form, "closed form", problems);
    for (const auto& problem : problems) fail(path, problem);
    return problems.empty() ? std::optional(form) : std::nullopt;
  }

  std::optional<TailTerms> tailTerms(const Json& j, const std::string& path) {
    TailTerms terms;
    if (j.is_object()) {
      auto form = closedForm(j, path);
      if (!form) return std::nullopt;
      terms.push_back(*form);
      return terms;
    }
    if (!j.is_array() || j.empty()) {
      fail(path, "expected a closed form object or a non-empty array of them");
      return std::nullopt;
    }
    bool ok = true;
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (auto form = closedForm(j[i], at(path, i))) terms.push_back(*form); else ok = false;
    }
    return ok ? std::optional(terms) : std::nullopt;
  }

  PassportLine line(const Json& j, const std::string& path) {
    PassportLine out;
    if (!expectObject(j, path)) return out;
    if (const Json* prefix = member(j, path, "prefix", false); prefix && expectArray(*prefix, at(path, "prefix"))) {
      for (std::size_t i = 0; i < prefix->size(); ++i)
        if (auto v = integer((*prefix)[i], at(at(path, "prefix"), i))) out.prefix.push_back(Cardinal{*v});
    }
    if (const Json* tail = member(j, path, "tail", false); tail && expectObject(*tail, at(path, "tail"))) {
      const std::string tailPath = at(path, "tail");
      AffineTail t;
      const Json* b0 = member(*tail, tailPath, "b0", true);
      const Json* b1 = member(*tail, tailPath, "b1", true);
      auto v0 = b0 ? integer(*b0, at(tailPath, "b0")) : std::nullopt;
      auto v1 = b1 ? integer(*b1, at(tailPath, "b1")) : std::nullopt;
      if (v0 && v1) {
        t.b0 = *v0;
        t.b1 = *v1;
        out.tail = t;
      }
    }
    return out;
  }

  SeqSpec sequence(const Json& j, const std::string& path) {
    SeqSpec out;
    if (!expectObject(j, path)) return out;
    if (const Json* prefix = member(j, path, "prefix", false); prefix && expectArray(*prefix, at(path, "prefix"))) {
      for (std::size_t i = 0; i < prefix->size(); ++i)
        if (auto v = rational((*prefix)[i], at(at(path, "prefix"), i))) out.prefix.push_back(*v);
    }
    if (const Json* tail = member(j, path, "tail", false)) out.tail = tailTerms(*tail, at(path, "tail"));
    return out;
  }

  Passport passport(const Json& j, const std::string& path) {
    Passport p;
    if (!expectObject(j, path)) return p;
    const std::size_t before = issues.size();
    if (const Json* s = member(j, path, "sLine", true)) p.sLine = line(*s, at(path, "sLine"));
    if (const Json* u = member(j, path, "uLine", true)) p.uLine = line(*u, at(path, "uLine"));
    if (const Json* m = member(j, path, "uMeasures", true)) p.uMeasures = sequence(*m, at(path, "uMeasures"));
    if (issues.size() != before) return p;
    for (const auto& violation : validatePassport(p).violations) {
      std::string where = path;
      if (violation.rfind("sLine", 0) == 0) where = at(path, "sLine");
      else if (violation.rfind("uLine", 0) == 0) where = at(path, "uLine");
      else if (violation.find("uMeasures") != std::string::npos || violation.find("length mismatch") != std::string::npos)
        where = at(path, "uMeasures");
      fail(where, violation);
    }
    return p;
  }

  AlgebraDescriptor algebra(const Json& j, const std::string& path) {
    AlgebraDescriptor a;
    if (!expectObject(j, path)) return a;
    const Json* blocks = member(j, path, "blocks", true);
    if (!blocks || !expectArray(*blocks, at(path, "blocks"))) return a;
    if (blocks->empty()) fail(at(path, "blocks"), "at least one block is required");
    for (std::size_t i = 0; i < blocks->size(); ++i) {
      const std::string blockPath = at(at(path, "blocks"), i);
      const Json& b = (*blocks)[i];
      if (!expectObject(b, blockPath)) continue;
      Block block;
      if (const Json* n = member(b, blockPath, "n", true)) {
        if (auto v = integer(*n, at(blockPath, "n"))) {
          if (*v < 1 || *v > 1'000'000) fail(at(blockPath, "n"), "n must be a positive integer");
          else block.n = static_cast<int>(*v);
        }
      }
      if (const Json* c = member(b, blockPath, "center", true)) block.center = passport(*c, at(blockPath, "center"));
      a.blocks.push_back(std::move(block));
    }
    return a;
  }

  std::optional<Element> element(const Json& j, const std::string& path) {
    if (!expectObject(j, path)) return std::nullopt;
    const Json* type = member(j, path, "type", true);
    if (!type) return std::nullopt;
    if (!type->is_string() || (*type != "scalar-step" && *type != "matrix-step")) {
      fail(at(path, "type"), "type must be \"scalar-step\" or \"matrix-step\"");
      return std::nullopt;
    }
    const Json* cells = member(j, path, "cells", true);
    if (!cells || !expectArray(*cells, at(path, "cells"))) return std::nullopt;
    const std::size_t before = issues.size();
    auto cellMass = [&](const Json& cell, const std::string& cellPath) -> double {
      const Json* mass = member(cell, cellPath, "mass", true);
      if (!mass) return 0.0;
      auto v = real(*mass, at(cellPath, "mass"));
      if (v && (!(*v > 0.0) || !std::isfinite(*v))) fail(at(cellPath, "mass"), "mass must be positive and finite");
      return v.value_or(0.0);
    };

    if (*type == "scalar-step") {
      StepFunction f;
      for (std::size_t i = 0; i < cells->size(); ++i) {
        const std::string cellPath = at(at(path, "cells"), i);
        if (!expectObject((*cells)[i], cellPath)) continue;
        const double mass = cellMass((*cells)[i], cellPath);
        const Json* value = member((*cells)[i], cellPath, "value", true);
        auto z = value ? complex(*value, at(cellPath, "value")) : std::nullopt;
        f.cells.push_back({mass, z.value_or(Complex())});
      }
      if (issues.size() != before) return std::nullopt;
      return f;
    }

    MatrixStepFunction f;
    const Json* n = member(j, path, "n", true);
    auto size = n ? integer(*n, at(path, "n")) : std::nullopt;
    if (!size) return std::nullopt;
    if (*size < 1 || *size > 64) {
      fail(at(path, "n"), "n must be between 1 and 64");
      return std::nullopt;
    }
    f.n = static_cast<int>(*size);
    for (std::size_t i = 0; i < cells->size(); ++i) {
      const std::string cellPath = at(at(path, "cells"), i);
      if (!expectObject((*cells)[i], cellPath)) continue;
      const double mass = cellMass((*cells)[i], cellPath);
      const Json* value = member((*cells)[i], cellPath, "value", true);
      if (!value) continue;
      const std::string valuePath = at(cellPath, "value");
      ComplexMatrix m = ComplexMatrix::Zero(f.n, f.n);
      if (!value->is_array() || value->size() != static_cast<std::size_t>(f.n)) {
        fail(valuePath, "expected " + std::to_string(f.n) + " rows");
        continue;
      }
      for (int r = 0; r < f.n; ++r) {
        const Json& row = (*value)[static_cast<std::size_t>(r)];
        const std::string rowPath = at(valuePath, static_cast<std::size_t>(r));
        if (!row.is_array() || row.size() != static_cast<std::size_t>(f.n)) {
          fail(rowPath, "expected " + std::to_string(f.n) + " entries");
          continue;
        }
        for (int c = 0; c < f.n; ++c)
          if (auto z = complex(row[static_cast<std::size_t>(c)], at(rowPath, static_cast<std::size_t>(c)))) m(r, c) = *z;
      }
      f.cells.push_back({mass, std::move(m)});
    }
    if (issues.size() != before) return std::nullopt;
    return f;
  }

  CellModelBody cellModel(const Json& j, const std::string& path) {
    CellModelBody body;
    if (!expectObject(j, path)) return body;
    const std::size_t before = issues.size();
    if (const Json* cells = member(j, path, "prefixCells", false); cells && expectArray(*cells, at(path, "prefixCells"))) {
      for (std::size_t i = 0; i < cells->size(); ++i) {
        const std::string cellPath = at(at(path, "prefixCells"), i);
        if (!expectObject((*cells)[i], cellPath)) continue;
        const Json* mass = member((*cells)[i], cellPath, "mass", true);
        const Json* h = member((*cells)[i], cellPath, "h", true);
        auto m = mass ? rational(*mass, at(cellPath, "mass")) : std::nullopt;
        auto hv = h ? rational(*h, at(cellPath, "h")) : std::nullopt;
        if (m && hv) body.model.prefixCells.push_back({*m, *hv});
      }
    }
    if (const Json* tm = member(j, path, "tailMass", false)) body.model.tailMass = closedForm(*tm, at(path, "tailMass"));
    if (const Json* th = member(j, path, "tailH", false)) body.model.tailH = closedForm(*th, at(path, "tailH"));
    if (issues.size() == before) {
      for (const auto& violation : validateCellModel(body.model).violations) {
        std::string where = path;
        if (auto open = violation.find("prefixCells["); open != std::string::npos) {
          const auto close = violation.find(']', open);
          where = at(at(path, "prefixCells"), violation.substr(open + 12, close - open - 12));
        } else if (violation.rfind("tailMass and tailH", 0) == 0) {
          where = path;
        } else if (violation.rfind("tailMass", 0) == 0) {
          where = at(path, "tailMass");
        } else if (violation.rfind("tailH", 0) == 0) {
          where = at(path, "tailH");
        }
        fail(where, violation);
      }
    }
    if (const Json* elements = member(j, path, "elements", false); elements && expectObject(*elements, at(path, "elements"))) {
      for (const auto& [name, value] : elements->items())
        if (auto e = element(value, at(at(path, "elements"), name))) body.elements.emplace(name, std::move(*e));
    }
    return body;
  }
};

std::pair<std::size_t, std::size_t> lineColumn(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  const std::size_t end = std::min(byte == 0 ? 0 : byte - 1, text.size());
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

Json rationalJson(const Rational& r) { return toString(r); }

Json closedFormJson(const ClosedForm& f) {
  return Json{{"c", rationalJson(f.c)}, {"p", rationalJson(f.p)}, {"q", rationalJson(f.q)}};
}

Json lineJson(const PassportLine& line) {
  Json out = Json::object();
  Json prefix = Json::array();
  for (const auto& c : line.prefix) prefix.push_back(c.alephIndex);
  out["prefix"] = prefix;
  if (line.tail) out["tail"] = Json{{"b0", line.tail->b0}, {"b1", line.tail->b1}};
  return out;
}

Json sequenceJson(const SeqSpec& seq) {
  Json out = Json::object();
  Json prefix = Json::array();
  for (const auto& r : seq.prefix) prefix.push_back(rationalJson(r));
  out["prefix"] = prefix;
  if (seq.tail) {
    if (seq.tail->size() == 1) {
      out["tail"] = closedFormJson(seq.tail->front());
    } else {
      Json terms = Json::array();
      for (const auto& t : *seq.tail) terms.push_back(closedFormJson(t));
      out["tail"] = terms;
    }
  }
  return out;
}

Json passportJson(const Passport& p) {
  return Json{{"sLine", lineJson(p.sLine)}, {"uLine", lineJson(p.uLine)}, {"uMeasures", sequenceJson(p.uMeasures)}};
}

Json complexJson(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Json elementJson(const Element& e) {
  if (const auto* f = std::get_if<StepFunction>(&e)) {
    Json cells = Json::array();
    for (const auto& c : f->cells) cells.push_back(Json{{"mass", c.mass}, {"value", complexJson(c.value)}});
    return Json{{"type", "scalar-step"}, {"cells", cells}};
  }
  const auto& f = std::get<MatrixStepFunction>(e);
  Json cells = Json::array();
  for (const auto& c : f.cells) {
    Json rows = Json::array();
    for (int r = 0; r < f.n; ++r) {
      Json row = Json::array();
      for (int col = 0; col < f.n; ++col) row.push_back(complexJson(c.value(r, col)));
      rows.push_back(row);
    }
    cells.push_back(Json{{"mass", c.mass}, {"value", rows}});
  }
  return Json{{"type", "matrix-step"}, {"n", f.n}, {"cells", cells}};
}

void writeValue(const Json& value, std::string& out, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string closePad(static_cast<std::size_t>(2 * depth), ' ');
  switch (value.type()) {
    case Json::value_t::object: {
      if (value.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, item] : value.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad + Json(key).dump() + ": ";
        writeValue(item, out, depth + 1);
      }
      out += "\n" + closePad + "}";
      return;
    }
    case Json::value_t::array: {
      if (value.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < value.size(); ++i) {
        if (i > 0) out += ",\n";
        out += pad;
        writeValue(value[i], out, depth + 1);
      }
      out += "\n" + closePad + "]";
      return;
    }
    case Json::value_t::number_float: {
      const double v = value.get<double>();
      if (std::isnan(v)) out += "\"NaN\"";
      else if (std::isinf(v)) out += v > 0 ? "\"Infinity\"" : "\"-Infinity\"";
      else out += formatDouble(v);
      return;
    }
    default:
      out += value.dump();
  }
}

}  // namespace

DocumentError::DocumentError(std::vector<DocumentIssue> issues)
    : InputError(joinMessages(issues)), issues_(std::move(issues)) {}

ModelDocument parseDocument(std::string_view text) {
  Json root;
  try {
    root = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    auto [line, column] = lineColumn(text, e.byte);
    std::string message = e.what();
    if (auto pos = message.find("syntax error"); pos != std::string::npos) message = message.substr(pos);
    throw DocumentError({{"", message, line, column}});
  }

  Reader reader;
  ModelDocument doc;
  if (!root.is_object()) {
    reader.fail("", "document must be a JSON object");
    throw DocumentError(reader.issues);
  }
  if (const Json* version = reader.member(root, "", "version", true)) {
    if (auto v = reader.integer(*version, "/version")) {
      if (*v != 1) reader.fail("/version", "unsupported version " + std::to_string(*v) + " (expected 1)");
    }
  }
  std::optional<DocumentKind> kind;
  if (const Json* k = reader.member(root, "", "kind", true)) {
    if (*k == "cell-model") kind = DocumentKind::CellModel;
    else if (*k == "passport") kind = DocumentKind::Passport;
    else if (*k == "algebra") kind = DocumentKind::Algebra;
    else reader.fail("/kind", "kind must be \"cell-model\", \"passport\" or \"algebra\"");
  }
  for (const auto& [key, _] : root.items())
    if (key != "version" && key != "kind" && key != "body") reader.fail("/" + escapePointer(key), "unknown field");
  const Json* body = reader.member(root, "", "body", true);
  if (kind && body) {
    doc.kind = *kind;
    switch (*kind) {
      case DocumentKind::CellModel: doc.body = reader.cellModel(*body, "/body"); break;
      case DocumentKind::Passport: doc.body = reader.passport(*body, "/body"); break;
      case DocumentKind::Algebra: doc.body = reader.algebra(*body, "/body"); break;
    }
  }
  if (!reader.issues.empty()) throw DocumentError(reader.issues);
  return doc;
}

Json toJson(const ModelDocument& doc) {
  Json body;
  switch (doc.kind) {
    case DocumentKind::CellModel: {
      const auto& cm = doc.cellModel();
      body = Json::object();
      Json cells = Json::array();
      for (const auto& c : cm.model.prefixCells) cells.push_back(Json{{"mass", rationalJson(c.mass)}, {"h", rationalJson(c.h)}});
      body["prefixCells"] = cells;
      if (cm.model.tailMass) body["tailMass"] = closedFormJson(*cm.model.tailMass);
      if (cm.model.tailH) body["tailH"] = closedFormJson(*cm.model.tailH);
      if (!cm.elements.empty()) {
        Json elements = Json::object();
        for (const auto& [name, e] : cm.elements) elements[name] = elementJson(e);
        body["elements"] = elements;
      }
      break;
    }
    case DocumentKind::Passport: body = passportJson(doc.passport()); break;
    case DocumentKind::Algebra: {
      Json blocks = Json::array();
      for (const auto& b : doc.algebra().blocks) blocks.push_back(Json{{"n", b.n}, {"center", passportJson(b.center)}});
      body = Json{{"blocks", blocks}};
      break;
    }
  }
  return Json{{"version", doc.version}, {"kind", kindName(doc.kind)}, {"body", body}};
}

std::string serializeDocument(const ModelDocument& doc) { return writeJson(toJson(doc)); }

std::string formatDouble(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string writeJson(const Json& value) {
  std::string out;
  writeValue(value, out, 0);
  out += "\n";
  return out;
}

}  // namespace logalg
