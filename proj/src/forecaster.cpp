// Copyright 2026 The ExtremeCast Authors
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

#include "extremecast/forecaster.hpp"

#include "extremecast/errors.hpp"

namespace extremecast {

std::string model_kind_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::Mmwstm: return "mmwstm";
    case ModelKind::Tcn: return "tcn";
    case ModelKind::NBeats: return "nbeats";
    case ModelKind::Persistence: return "persistence";
  }
  return "mmwstm";
}

ModelKind parse_model_kind(std::string_view name) {
  if (name == "mmwstm") return ModelKind::Mmwstm;
  if (name == "tcn") return ModelKind::Tcn;
  if (name == "nbeats") return ModelKind::NBeats;
  if (name == "persistence") return ModelKind::Persistence;
  throw ConfigError("model", "unknown model '" + std::string(name) + "' (mmwstm|tcn|nbeats|persistence)");
}

}  // namespace extremecast
