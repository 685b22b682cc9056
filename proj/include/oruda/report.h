// Copyright 2026 The ORUDA Lab Authors
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

#ifndef ORUDA_REPORT_H_
#define ORUDA_REPORT_H_

#include <string>
#include <vector>

#include "oruda/experiment.h"

namespace oruda {

// Flat `key=value` document headed by "#oruda-report v<version>". Numbers
// use shortest round-trip decimals, so equal reports are equal bytes.
std::string FormatReportText(const MetricsReport& report);
// Structured form of the same report plus per-instance records.
std::string FormatReportJson(const MetricsReport& report);
// Tab-separated per-instance table: id, label, predictions, verdict, score.
std::string FormatInstanceTable(const MetricsReport& report);
std::string FormatSummary(const std::vector<SummaryRow>& rows);

// Writes <dir>/<stem>.txt and <dir>/<stem>.json, creating `dir`.
void WriteReport(const MetricsReport& report, const std::string& dir,
                 const std::string& stem);
void WriteText(const std::string& path, const std::string& text);

}  // namespace oruda

#endif  // ORUDA_REPORT_H_
