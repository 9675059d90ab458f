#include "qhist/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include <json.hpp>

namespace qhist {

using json = nlohmann::ordered_json;

namespace {

// ---------------------------------------------------------------------------
// Machine format

json encode(const Value& v) {
  return std::visit(
      [](const auto& x) -> json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, std::string>) {
          return {{"text", x}};
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          return {{"int", x}};
        } else if constexpr (std::is_same_v<T, double>) {
          return {{"real", format_full(x)}};
        } else if constexpr (std::is_same_v<T, Complex>) {
          return {{"complex", json::array({format_full(x.real()), format_full(x.imag())})}};
        } else {
          json rows = json::array();
          for (std::size_t i = 0; i < x.dim(); ++i) {
            json row = json::array();
            for (std::size_t j = 0; j < x.dim(); ++j)
              row.push_back(json::array({format_full(x(i, j).real()), format_full(x(i, j).imag())}));
            rows.push_back(std::move(row));
          }
          return {{"matrix", std::move(rows)}};
        }
      },
      v);
}

[[noreturn]] void schema(const std::string& what) {
  throw Error(Errc::SchemaError, "machine report: " + what);
}

double decode_real(const json& j) {
  if (!j.is_string()) schema("real value must be a decimal string");
  const std::string& s = j.get_ref<const std::string&>();
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') schema("bad decimal string '" + s + "'");
  return v;
}

Complex decode_complex(const json& j) {
  if (!j.is_array() || j.size() != 2) schema("complex value must be [re, im]");
  return {decode_real(j[0]), decode_real(j[1])};
}

Value decode(const json& j) {
  if (!j.is_object() || j.size() != 1) schema("value must be a single-key object");
  const auto& [key, v] = *j.items().begin();
  if (key == "text") return v.get<std::string>();
  if (key == "int") return v.get<std::int64_t>();
  if (key == "real") return decode_real(v);
  if (key == "complex") return decode_complex(v);
  if (key == "matrix") {
    if (!v.is_array()) schema("matrix must be an array of rows");
    Operator m(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_array() || v[i].size() != v.size()) schema("matrix must be square");
      for (std::size_t j2 = 0; j2 < v.size(); ++j2) m(i, j2) = decode_complex(v[i][j2]);
    }
    return m;
  }
  schema("unknown value type '" + key + "'");
}

json encode_fields(const std::vector<Field>& fields) {
  json out = json::array();
  for (const auto& f : fields) out.push_back({{"name", f.name}, {"value", encode(f.value)}});
  return out;
}

std::vector<Field> decode_fields(const json& j) {
  std::vector<Field> out;
  for (const auto& f : j) out.push_back({f.at("name").get<std::string>(), decode(f.at("value"))});
  return out;
}

std::optional<Errc> errc_from_name(const std::string& name) {
  for (int k = 0; k <= static_cast<int>(Errc::ValidationError); ++k) {
    const auto code = static_cast<Errc>(k);
    if (errc_name(code) == name) return code;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Text format

std::string fmt_real(double v, int precision) {
  char buf[64];
  const double a = std::abs(v);
  if (v == 0.0 || (a >= 1e-4 && a < 1e7)) {
    std::snprintf(buf, sizeof buf, "%.*f", precision, v == 0.0 ? 0.0 : v);
  } else {
    std::snprintf(buf, sizeof buf, "%.*e", precision, v);
  }
  return buf;
}

std::string fmt_complex(Complex c, int precision) {
  std::string re = fmt_real(c.real(), precision);
  std::string im = fmt_real(std::abs(c.imag()), precision);
  return re + (c.imag() < 0.0 ? " - " : " + ") + im + "i";
}

std::string fmt_scalar(const Value& v, int precision) {
  return std::visit(
      [precision](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, std::string>) {
          return x;
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          return std::to_string(x);
        } else if constexpr (std::is_same_v<T, double>) {
          return fmt_real(x, precision);
        } else if constexpr (std::is_same_v<T, Complex>) {
          return fmt_complex(x, precision);
        } else {
          return "<" + std::to_string(x.dim()) + "x" + std::to_string(x.dim()) + " matrix>";
        }
      },
      v);
}

// UTF-8 continuation bytes do not take a column.
std::size_t display_width(const std::string& s) {
  std::size_t cols = 0;
  for (unsigned char c : s)
    if ((c & 0xC0) != 0x80) ++cols;
  return cols;
}

void pad_right(std::ostringstream& os, const std::string& s, std::size_t width) {
  os << s;
  for (std::size_t k = display_width(s); k < width; ++k) os << ' ';
}

void write_matrix(std::ostringstream& os, const Operator& m, int precision, const std::string& indent) {
  std::vector<std::string> cells;
  std::size_t width = 0;
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) {
      cells.push_back(fmt_complex(m(i, j), precision));
      width = std::max(width, cells.back().size());
    }
  for (std::size_t i = 0; i < m.dim(); ++i) {
    os << indent << "[ ";
    for (std::size_t j = 0; j < m.dim(); ++j) {
      const std::string& c = cells[i * m.dim() + j];
      os << std::string(width - c.size(), ' ') << c << (j + 1 < m.dim() ? "   " : " ");
    }
    os << "]\n";
  }
}

void write_table(std::ostringstream& os, const Table& t, int precision) {
  os << "    " << t.name << "\n";
  std::vector<std::vector<std::string>> cells;
  std::vector<std::size_t> width(t.columns.size());
  for (std::size_t c = 0; c < t.columns.size(); ++c) width[c] = display_width(t.columns[c]);
  for (const auto& row : t.rows) {
    std::vector<std::string> line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      line.push_back(fmt_scalar(row[c], precision));
      if (c < width.size()) width[c] = std::max(width[c], display_width(line.back()));
    }
    cells.push_back(std::move(line));
  }
  os << "      ";
  for (std::size_t c = 0; c < t.columns.size(); ++c) {
    pad_right(os, t.columns[c], width[c]);
    os << (c + 1 < t.columns.size() ? "  " : "");
  }
  os << "\n";
  for (std::size_t r = 0; r < cells.size(); ++r) {
    const auto& line = cells[r];
    os << "      ";
    for (std::size_t c = 0; c < line.size(); ++c) {
      // Right-align everything but text.
      const std::size_t w = c < width.size() ? width[c] : 0;
      const std::string& s = line[c];
      const bool text = std::holds_alternative<std::string>(t.rows[r][c]);
      if (text) {
        pad_right(os, s, w);
      } else {
        os << std::string(w > display_width(s) ? w - display_width(s) : 0, ' ') << s;
      }
      os << (c + 1 < line.size() ? "  " : "");
    }
    os << "\n";
  }
}

void write_fields(std::ostringstream& os, const std::vector<Field>& fields, int precision,
                  const std::string& indent) {
  std::size_t width = 0;
  for (const auto& f : fields) width = std::max(width, display_width(f.name));
  for (const auto& f : fields) {
    os << indent;
    pad_right(os, f.name, width);
    if (const auto* m = std::get_if<Operator>(&f.value)) {
      os << " :\n";
      write_matrix(os, *m, precision, indent + "  ");
    } else {
      os << " : " << fmt_scalar(f.value, precision) << "\n";
    }
  }
}

std::string render_text(const EvalReport& r, int precision) {
  std::ostringstream os;
  os << "== " << r.title << " ==\n";
  write_fields(os, r.header, precision, "  ");
  for (const auto& e : r.entries) {
    const int p = e.precision.value_or(precision);
    os << "\n[" << e.id << "] " << e.kind;
    if (!e.target.empty()) os << " " << e.target;
    os << " : " << e.status() << "\n";
    if (e.error) os << "    error: " << e.message << "\n";
    write_fields(os, e.fields, p, "    ");
    for (const auto& t : e.tables) write_table(os, t, p);
    if (!e.checks.empty()) {
      Table t{"cross-checks", {"quantity", "projector", "amplitude", "|diff|"}, {}};
      for (const auto& c : e.checks) t.rows.push_back({c.name, c.projector, c.amplitude, c.difference});
      write_table(os, t, p);
    }
    for (const auto& w : e.warnings) os << "    warning: " << w << "\n";
  }
  return os.str();
}

std::string render_machine(const EvalReport& r) {
  json doc;
  doc["title"] = r.title;
  doc["header"] = encode_fields(r.header);
  json entries = json::array();
  for (const auto& e : r.entries) {
    json je;
    je["id"] = e.id;
    je["kind"] = e.kind;
    je["target"] = e.target;
    je["status"] = e.status();
    je["message"] = e.message;
    je["fields"] = encode_fields(e.fields);
    json tables = json::array();
    for (const auto& t : e.tables) {
      json rows = json::array();
      for (const auto& row : t.rows) {
        json jr = json::array();
        for (const auto& v : row) jr.push_back(encode(v));
        rows.push_back(std::move(jr));
      }
      tables.push_back({{"name", t.name}, {"columns", t.columns}, {"rows", std::move(rows)}});
    }
    je["tables"] = std::move(tables);
    json checks = json::array();
    for (const auto& c : e.checks) {
      checks.push_back({{"name", c.name},
                        {"projector", format_full(c.projector)},
                        {"amplitude", format_full(c.amplitude)},
                        {"difference", format_full(c.difference)}});
    }
    je["checks"] = std::move(checks);
    je["warnings"] = e.warnings;
    if (e.precision) je["precision"] = *e.precision;
    entries.push_back(std::move(je));
  }
  doc["entries"] = std::move(entries);
  doc["exit_code"] = r.exit_code();
  return doc.dump(2) + "\n";
}

}  // namespace

CrossCheck make_check(std::string name, double projector, double amplitude) {
  return {std::move(name), projector, amplitude, std::abs(projector - amplitude)};
}

std::string ReportEntry::status() const { return error ? std::string(errc_name(*error)) : "ok"; }

int EvalReport::exit_code() const {
  int code = 0;
  for (const auto& e : entries)
    if (e.error) code = std::max(code, exit_code_for(*e.error));
  return code;
}

std::string format_full(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string render_report(const EvalReport& report, ReportFormat format, int precision) {
  return format == ReportFormat::Text ? render_text(report, precision) : render_machine(report);
}

EvalReport parse_machine_report(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    schema(e.what());
  }
  try {
    EvalReport r;
    r.title = doc.at("title").get<std::string>();
    r.header = decode_fields(doc.at("header"));
    for (const auto& je : doc.at("entries")) {
      ReportEntry e;
      e.id = je.at("id").get<std::string>();
      e.kind = je.at("kind").get<std::string>();
      e.target = je.at("target").get<std::string>();
      const auto status = je.at("status").get<std::string>();
      if (status != "ok") {
        e.error = errc_from_name(status);
        if (!e.error) schema("unknown status '" + status + "'");
      }
      e.message = je.at("message").get<std::string>();
      e.fields = decode_fields(je.at("fields"));
      for (const auto& jt : je.at("tables")) {
        Table t;
        t.name = jt.at("name").get<std::string>();
        t.columns = jt.at("columns").get<std::vector<std::string>>();
        for (const auto& jr : jt.at("rows")) {
          std::vector<Value> row;
          for (const auto& v : jr) row.push_back(decode(v));
          t.rows.push_back(std::move(row));
        }
        e.tables.push_back(std::move(t));
      }
      for (const auto& jc : je.at("checks")) {
        e.checks.push_back({jc.at("name").get<std::string>(), decode_real(jc.at("projector")),
                            decode_real(jc.at("amplitude")), decode_real(jc.at("difference"))});
      }
      e.warnings = je.at("warnings").get<std::vector<std::string>>();
      if (je.contains("precision")) e.precision = je.at("precision").get<int>();
      r.entries.push_back(std::move(e));
    }
    return r;
  } catch (const json::exception& e) {
    schema(e.what());
  }
}

std::string error_record(Errc code, const std::string& message) {
  json rec;
  rec["status"] = "error";
  rec["code"] = std::string(errc_name(code));
  rec["exit_code"] = exit_code_for(code);
  rec["message"] = message;
  return rec.dump();
}

}  // namespace qhist
