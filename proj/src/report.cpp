#include <cmath>
#include <cstdio>
#include <sstream>

#include "foliage/verifier.hpp"

namespace foliage {

std::string format_number(double v) {
  if (!std::isfinite(v)) return "null";
  if (v == 0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  std::string s(buf);
  if (s == "-0") s = "0";
  return s;
}

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out + "\"";
}

template <typename Range>
std::string number_array(const Range& values) {
  std::string out = "[";
  bool first = true;
  for (double v : values) {
    if (!first) out += ", ";
    first = false;
    out += format_number(v);
  }
  return out + "]";
}

std::string vector_json(const Eigen::VectorXd& v) {
  if (v.size() == 0) return "null";
  return number_array(std::vector<double>(v.data(), v.data() + v.size()));
}

// Row-major nested arrays.
std::string matrix_json(const Eigen::MatrixXd& M) {
  if (M.size() == 0) return "null";
  std::string out = "[";
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    if (i) out += ", ";
    std::vector<double> row(static_cast<std::size_t>(M.cols()));
    for (Eigen::Index j = 0; j < M.cols(); ++j) row[static_cast<std::size_t>(j)] = M(i, j);
    out += number_array(row);
  }
  return out + "]";
}

std::string polys_json(const std::vector<Polynomial>& ps, const VariableNames& names) {
  std::string out = "[";
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (i) out += ", ";
    out += quote(to_string(ps[i], names));
  }
  return out + "]";
}

std::string status_text(const GeneratorRecord& r) {
  switch (r.status) {
    case RecordStatus::pass: return "pass";
    case RecordStatus::fail: return "fail: " + r.note;
    case RecordStatus::skipped: return "skipped: " + r.note;
  }
  return "unknown";
}

std::string bool_json(bool b) { return b ? "true" : "false"; }

}  // namespace

std::string render_report(const Scenario& s, const VerificationReport& r,
                          const std::optional<InverseCheck>& inverse, const std::string& command) {
  std::ostringstream out;
  out << "{\n";
  out << "  \"command\": " << quote(command) << ",\n";
  out << "  \"scenario\": " << quote(s.name) << ",\n";
  out << "  \"dimension\": " << s.dimension() << ",\n";
  out << "  \"generators\": [";
  for (std::size_t i = 0; i < s.generators.size(); ++i) {
    if (i) out << ", ";
    out << quote(to_string(s.generators[i], s.names));
  }
  out << "],\n";
  out << "  \"field_x\": " << quote(to_string(s.field_x, s.names)) << ",\n";
  out << "  \"horizon\": " << format_number(s.horizon) << ",\n";

  if (r.involutivity) {
    const auto& t = *r.involutivity;
    out << "  \"involutivity\": {\n";
    out << "    \"degree_bound\": " << t.degree_bound() << ",\n";
    out << "    \"certified\": " << bool_json(t.all_certified()) << ",\n";
    out << "    \"pairs\": [";
    bool first = true;
    for (std::size_t i = 0; i < t.size(); ++i) {
      for (std::size_t j = i + 1; j < t.size(); ++j) {
        out << (first ? "\n" : ",\n");
        first = false;
        out << "      {\"pair\": [" << i + 1 << ", " << j + 1 << "], ";
        if (const auto& cert = t.at(i, j)) {
          out << "\"certificate\": " << polys_json(cert->coefficients, s.names)
              << ", \"degree_used\": " << cert->degree_used << "}";
        } else {
          out << "\"certificate\": null, \"status\": "
              << quote("no certificate up to degree " + std::to_string(t.degree_bound())) << "}";
        }
      }
    }
    out << (first ? "]\n" : "\n    ]\n");
    out << "  },\n";
  }

  if (r.gamma) {
    if (const auto* g = std::get_if<GammaMatrix>(&*r.gamma)) {
      out << "  \"gamma\": [";
      for (std::size_t i = 0; i < g->size(); ++i) {
        out << (i ? ", " : "") << polys_json(g->row(i), s.names);
      }
      out << "],\n";
    } else {
      const auto& miss = std::get<GammaNotFound>(*r.gamma);
      out << "  \"gamma\": null,\n";
      out << "  \"gamma_status\": "
          << quote("row " + std::to_string(miss.row + 1) + ": no certificate up to degree " +
                   std::to_string(miss.degree_bound))
          << ",\n";
    }
  }

  out << "  \"points\": [";
  for (std::size_t p = 0; p < r.points.size(); ++p) {
    const auto& pt = r.points[p];
    out << (p ? ",\n" : "\n");
    out << "    {\"point\": " << number_array(pt.point) << ", ";
    if (!pt.completed) {
      out << "\"status\": " << quote("skipped: " + pt.skip_reason) << "}";
      continue;
    }
    out << "\"status\": \"completed\", "
        << "\"fundamental\": " << matrix_json(pt.fundamental) << ", "
        << "\"naive\": " << matrix_json(pt.naive) << ", "
        << "\"integral_of_A\": " << matrix_json(pt.integral_of_A) << ", "
        << "\"naive_gap\": " << format_number(pt.naive_gap) << ", "
        << "\"defect\": " << format_number(pt.defect) << ", "
        << "\"determinant\": " << format_number(pt.determinant) << ", "
        << "\"condition\": " << format_number(pt.condition) << "}";
  }
  out << (r.points.empty() ? "],\n" : "\n  ],\n");

  out << "  \"records\": [";
  for (std::size_t k = 0; k < r.records.size(); ++k) {
    const auto& rec = r.records[k];
    const bool done = rec.status != RecordStatus::skipped;
    out << (k ? ",\n" : "\n");
    out << "    {\"point\": " << number_array(s.samples[rec.point_index])
        << ", \"generator\": " << rec.generator + 1
        << ", \"direct\": " << (done ? vector_json(rec.direct) : "null")
        << ", \"cocycle\": " << (done ? vector_json(rec.cocycle) : "null")
        << ", \"naive\": " << (done ? vector_json(rec.naive) : "null")
        << ", \"residual\": " << (done ? format_number(rec.residual) : "null")
        << ", \"naive_gap\": " << (done ? format_number(rec.naive_gap) : "null")
        << ", \"defect\": " << (done ? format_number(rec.defect) : "null")
        << ", \"status\": " << quote(status_text(rec)) << "}";
  }
  out << (r.records.empty() ? "],\n" : "\n  ],\n");

  if (inverse) {
    out << "  \"inverse\": {\"passed\": " << bool_json(inverse->passed)
        << ", \"max_deviation\": " << format_number(inverse->max_deviation)
        << ", \"checked\": " << inverse->checked << ", \"skipped\": " << inverse->skipped
        << "},\n";
  }
  out << "  \"summary\": {\"involutive\": " << bool_json(r.involutive)
      << ", \"gamma_found\": " << bool_json(r.gamma_found)
      << ", \"completed_points\": " << r.completed_points
      << ", \"sample_points\": " << s.samples.size()
      << ", \"naive_flagged\": " << r.naive_flagged
      << ", \"diagnostic\": " << quote(r.diagnostic) << "},\n";
  out << "  \"pass\": " << bool_json(r.passed) << "\n";
  out << "}\n";
  return out.str();
}

}  // namespace foliage
