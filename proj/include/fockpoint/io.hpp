// Copyright 2026 The fockpoint Authors
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

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "fockpoint/ground_config.hpp"
#include "fockpoint/moments.hpp"
#include "fockpoint/representations.hpp"
#include "fockpoint/sampling.hpp"

namespace fockpoint {

using Json = nlohmann::ordered_json;

/// Reads and parses a JSON file; throws ValidationError on I/O or syntax errors.
Json read_json_file(const std::string& path);

/// Decimal text with 17 significant digits.
std::string format_number(double value);

/// Matrix as {"n": n, "entries": [[re, im], ...]} (row-major), or as nested rows
/// whose entries are numbers or [re, im] pairs. Non-square matrices are written
/// with "rows" and "cols" instead of "n".
ComplexMatrix matrix_from_json(const Json& j);
Json matrix_to_json(const ComplexMatrix& m);

RepresentationSpec spec_from_json(const Json& j);
Json spec_to_json(const RepresentationSpec& spec);

/// [[0, 1], [2]]
std::vector<Box> boxes_from_json(const Json& j);

ConfigFunction config_function_from_json(const Json& j);
Json config_function_to_json(const ConfigFunction& f);

/// Header "replica,counts_0,..." then one row per replica.
void write_samples_csv(std::ostream& out, const SampleBatch& batch);
/// Unit-weight ground set sized by the number of count columns.
SampleBatch read_samples_csv(std::istream& in);

Json check_to_json(const Check& check);
Json report_to_json(const Report& report);

}  // namespace fockpoint
