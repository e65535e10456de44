// Copyright 2026 The schemadst Authors.
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
#ifndef SCHEMADST_PIPELINE_SYNTH_H_
#define SCHEMADST_PIPELINE_SYNTH_H_

#include <cstdint>
#include <vector>

#include "schemadst/corpus/types.h"

namespace schemadst::pipeline {

struct SynthConfig {
  int dialogues = 300;
  double multi_domain_fraction = 0.4;
  std::uint64_t seed = 5;
};

// Two services: Restaurants_1 (city, restaurant_name, time, date,
// street_address; categorical cuisine, party_size, price_range) and
// Hotels_1 (city, hotel_name, check_in_date, street_address; categorical
// number_of_rooms, star_rating).
std::vector<corpus::ServiceSchema> synthetic_schemas();

// Templated dialogues with searches, system offers that the user accepts
// or rejects, explicit values, don't-cares, requested slots, intent changes
// and service switches that carry city and date across services. Every
// state value is uttered by the user, offered by the system, or copied
// from the other service at a switch. Deterministic in the seed.
corpus::Corpus synthesize_corpus(const SynthConfig& config);

}  // namespace schemadst::pipeline

#endif  // SCHEMADST_PIPELINE_SYNTH_H_
