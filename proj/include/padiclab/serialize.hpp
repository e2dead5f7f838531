// Copyright 2026 The padiclab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "padiclab/algnum.hpp"
#include "padiclab/checks.hpp"
#include "padiclab/experiments.hpp"
#include "padiclab/measure.hpp"
#include "padiclab/roots.hpp"

namespace padiclab {

using Json = nlohmann::ordered_json;

// Exact rationals are written as fraction strings; `key`_decimal is advisory.
void put_rational(Json& j, const std::string& key, const Rational& q);

Json to_json(const PadicInt& x);
Json to_json(const Valuation& v);
Json to_json(const RootSet& r);
Json to_json(const RootSearch& r);
Json to_json(const Lemma4Record& r);
Json to_json(const RootSeparationProfile& r);
Json to_json(const Lemma5Record& r);
Json to_json(const AlgebraicNumber& a);
Json to_json(const DirichletResult& r);
Json to_json(const ApproxResult& r);
Json to_json(const RegularSystemReport& r);
Json to_json(const MeasureEstimate& m);
Json to_json(const ResultantRecord& r);
Json to_json(const CheckReport& r);

// Summary objects exclude the per-sample counts; those go to sample_lines.
Json summary_json(const DichotomyReport& r);
Json summary_json(const Thm2Report& r);
std::string sample_lines(const DichotomyReport& r);
std::string sample_lines(const Thm2Report& r);
std::string mean_curve_csv(const DichotomyReport& r);
std::string mean_curve_csv(const Thm2Report& r);

}  // namespace padiclab
