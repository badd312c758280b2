// Copyright 2026 The Multipass Authors
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


#ifndef MULTIPASS_IO_H
#define MULTIPASS_IO_H

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "multipass/closed_form.h"
#include "multipass/estimators.h"
#include "multipass/sequence.h"
#include "multipass/shot_sim.h"
#include "multipass/su2.h"

namespace multipass {

using Json = nlohmann::json;

/// printf("%.17g").
std::string format_double(double x);

/// Strict reader for one JSON object. Every error names the JSON pointer of
/// the field, and finish() rejects keys that were never read.
class FieldReader {
   public:
    /// Throws ErrorKind::Config unless `obj` is an object.
    FieldReader(const Json &obj, std::string pointer);

    bool has(const std::string &key) const;
    const Json &at(const std::string &key);
    double number(const std::string &key);
    double number_or(const std::string &key, double fallback);
    std::int64_t integer(const std::string &key);
    std::int64_t integer_or(const std::string &key, std::int64_t fallback);
    std::uint64_t unsigned_integer(const std::string &key);
    std::string string(const std::string &key);
    std::string string_or(const std::string &key, const std::string &fallback);

    std::string pointer(const std::string &key) const;
    void finish() const;

   private:
    const Json &obj_;
    std::string pointer_;
    std::vector<std::string> seen_;
};

Json to_json(const Su2Gate &g);
Json to_json(const GateSequence &seq);
Json to_json(const MultiPassResult &r);
Json to_json(const MeasurementRecord &rec);
Json to_json(const ErrorEstimate &est);

/// Throws ErrorKind::Config naming the offending field, or NonUnitary.
Su2Gate gate_from_json(const Json &j);
GateSequence sequence_from_json(const Json &j);
MeasurementRecord record_from_json(const Json &j);

/// "sequence_id,shots,count1,count2,seed".
std::string record_csv_header();
std::string record_csv_row(const MeasurementRecord &rec);

}  // namespace multipass

#endif
