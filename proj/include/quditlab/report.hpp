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

#ifndef QUDITLAB_REPORT_HPP
#define QUDITLAB_REPORT_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace quditlab {

/// A report cell: pre-formatted text plus a flag deciding whether the doc
/// format emits it as a bare number or a quoted string. All numbers are
/// rendered with "%.12g" (negative zero normalized), which keeps every
/// emitter byte-deterministic.
struct ReportCell {
  std::string text;
  bool numeric = false;
};

ReportCell num_cell(double value);
ReportCell int_cell(long long value);
ReportCell text_cell(std::string value);

struct ReportTable {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<ReportCell>> rows;
};

struct ReportDocument {
  std::string experiment;
  std::vector<std::pair<std::string, std::string>> config;  // sorted by key
  std::string config_hash;                                  // 16 hex digits
  std::vector<std::pair<std::string, ReportCell>> scalars;
  std::vector<ReportTable> tables;
};

enum class ReportFormat { table, doc };

/// "%.12g" with -0 normalized to 0; throws on non-finite values.
std::string format_double(double value);

/// FNV-1a (64-bit).
uint64_t fnv1a64(const std::string &data);
std::string hex64(uint64_t value);

std::string render_report(const ReportDocument &doc, ReportFormat format);

}  // namespace quditlab

#endif
