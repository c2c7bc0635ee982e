#include "weingarten/export.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "weingarten/error.hpp"

namespace weingarten::io {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

CsvWriter::CsvWriter(std::ostream& out, std::initializer_list<std::string> header)
    : CsvWriter(out, std::vector<std::string>(header)) {}

CsvWriter::CsvWriter(std::ostream& out, const std::vector<std::string>& header) : out_(out), columns_(header.size()) {
  for (std::size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
  out_ << '\n';
}

void CsvWriter::row(std::initializer_list<double> values) { row(std::vector<double>(values)); }

void CsvWriter::row(const std::vector<double>& values) {
  if (values.size() != columns_) throw Error(ErrorKind::Io, "CSV row width does not match header");
  for (std::size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << format_double(values[i]);
  out_ << '\n';
}

void write_obj(std::ostream& out, const Mesh& mesh, const std::string& comment) {
  if (!comment.empty()) out << "# " << comment << '\n';
  for (const auto& v : mesh.vertices) {
    out << "v " << format_double(v.x()) << ' ' << format_double(v.y()) << ' ' << format_double(v.z()) << '\n';
  }
  for (const auto& q : mesh.quads) {
    out << "f " << q[0] + 1 << ' ' << q[1] + 1 << ' ' << q[2] + 1 << ' ' << q[3] + 1 << '\n';
  }
}

namespace {

void indent(std::ostringstream& os, int depth) {
  for (int i = 0; i < depth; ++i) os << "  ";
}

void dump(std::ostringstream& os, const nlohmann::json& j, int depth) {
  using nlohmann::json;
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      std::size_t i = 0;
      for (auto it = j.begin(); it != j.end(); ++it, ++i) {
        indent(os, depth + 1);
        os << json(it.key()).dump() << ": ";
        dump(os, it.value(), depth + 1);
        os << (i + 1 < j.size() ? ",\n" : "\n");
      }
      indent(os, depth);
      os << '}';
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      os << "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        indent(os, depth + 1);
        dump(os, j[i], depth + 1);
        os << (i + 1 < j.size() ? ",\n" : "\n");
      }
      indent(os, depth);
      os << ']';
      return;
    }
    case json::value_t::number_float: {
      const double x = j.get<double>();
      os << (std::isfinite(x) ? format_double(x) : "null");
      return;
    }
    default:
      os << j.dump();
  }
}

}  // namespace

std::string dump_json(const nlohmann::json& j) {
  std::ostringstream os;
  dump(os, j, 0);
  os << '\n';
  return os.str();
}

}  // namespace weingarten::io
