// Copyright 2026 The quditlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "quditlab/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace quditlab {

std::string format_double(double value) {
  if (!std::isfinite(value)) {
    throw std::runtime_error("format_double: non-finite value");
  }
  if (value == 0.0) {
    value = 0.0;  // normalize -0
  }
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

ReportCell num_cell(double value) { return {format_double(value), true}; }

ReportCell int_cell(long long value) { return {std::to_string(value), true}; }

ReportCell text_cell(std::string value) { return {std::move(value), false}; }

uint64_t fnv1a64(const std::string &data) {
  uint64_t hash = 14695981039346656037ULL;
  for (unsigned char c : data) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  return hash;
}

std::string hex64(uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(value));
  return buf;
}

namespace {

std::string json_escape(const std::string &s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\t':
        out += "\\t";
        break;
      case '\r':
        out += "\\r";
        break;
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
  return out;
}

std::string json_cell(const ReportCell &cell) {
  if (cell.numeric) {
    return cell.text;
  }
  return "\"" + json_escape(cell.text) + "\"";
}

std::string render_table_format(const ReportDocument &doc) {
  std::ostringstream out;
  out << "# experiment: " << doc.experiment << "\n";
  out << "# config_hash: " << doc.config_hash << "\n";
  out << "# config:\n";
  for (const auto &[key, value] : doc.config) {
    out << "#   " << key << " = " << value << "\n";
  }
  if (!doc.scalars.empty()) {
    out << "\n== scalars ==\n";
    for (const auto &[name, cell] : doc.scalars) {
      out << name << " = " << cell.text << "\n";
    }
  }
  for (const ReportTable &table : doc.tables) {
    out << "\n== table: " << table.name << " ==\n";
    // Column-aligned plain text.
    std::vector<size_t> widths(table.columns.size());
    for (size_t c = 0; c < table.columns.size(); c++) {
      widths[c] = table.columns[c].size();
    }
    for (const auto &row : table.rows) {
      if (row.size() != table.columns.size()) {
        throw std::runtime_error("render_report: ragged table row");
      }
      for (size_t c = 0; c < row.size(); c++) {
        widths[c] = std::max(widths[c], row[c].text.size());
      }
    }
    auto emit_row = [&](const std::vector<std::string> &cells) {
      for (size_t c = 0; c < cells.size(); c++) {
        out << cells[c];
        if (c + 1 < cells.size()) {
          out << std::string(widths[c] - cells[c].size() + 2, ' ');
        }
      }
      out << "\n";
    };
    emit_row(table.columns);
    for (const auto &row : table.rows) {
      std::vector<std::string> cells;
      cells.reserve(row.size());
      for (const ReportCell &cell : row) {
        cells.push_back(cell.text);
      }
      emit_row(cells);
    }
  }
  return out.str();
}

std::string render_doc_format(const ReportDocument &doc) {
  std::ostringstream out;
  out << "{\n";
  out << "  \"experiment\": \"" << json_escape(doc.experiment) << "\",\n";
  out << "  \"config_hash\": \"" << doc.config_hash << "\",\n";
  out << "  \"config\": {";
  for (size_t i = 0; i < doc.config.size(); i++) {
    out << (i == 0 ? "\n" : ",\n");
    out << "    \"" << json_escape(doc.config[i].first) << "\": \""
        << json_escape(doc.config[i].second) << "\"";
  }
  out << "\n  },\n";
  out << "  \"scalars\": {";
  for (size_t i = 0; i < doc.scalars.size(); i++) {
    out << (i == 0 ? "\n" : ",\n");
    out << "    \"" << json_escape(doc.scalars[i].first)
        << "\": " << json_cell(doc.scalars[i].second);
  }
  out << "\n  },\n";
  out << "  \"tables\": [";
  for (size_t t = 0; t < doc.tables.size(); t++) {
    const ReportTable &table = doc.tables[t];
    out << (t == 0 ? "\n" : ",\n");
    out << "    {\n";
    out << "      \"name\": \"" << json_escape(table.name) << "\",\n";
    out << "      \"columns\": [";
    for (size_t c = 0; c < table.columns.size(); c++) {
      out << (c == 0 ? "" : ", ") << "\"" << json_escape(table.columns[c])
          << "\"";
    }
    out << "],\n";
    out << "      \"rows\": [";
    for (size_t r = 0; r < table.rows.size(); r++) {
      out << (r == 0 ? "\n" : ",\n");
      out << "        [";
      const auto &row = table.rows[r];
      if (row.size() != table.columns.size()) {
        throw std::runtime_error("render_report: ragged table row");
      }
      for (size_t c = 0; c < row.size(); c++) {
        out << (c == 0 ? "" : ", ") << json_cell(row[c]);
      }
      out << "]";
    }
    out << (table.rows.empty() ? "]" : "\n      ]") << "\n";
    out << "    }";
  }
  out << (doc.tables.empty() ? "]" : "\n  ]") << "\n";
  out << "}\n";
  return out.str();
}

}  // namespace

std::string render_report(const ReportDocument &doc, ReportFormat format) {
  if (format == ReportFormat::table) {
    return render_table_format(doc);
  }
  return render_doc_format(doc);
}

}  // namespace quditlab
