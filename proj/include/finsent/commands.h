// Copyright 2026 The finsent Authors.
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

#ifndef FINSENT_COMMANDS_H_
#define FINSENT_COMMANDS_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>

#include "finsent/classifier.h"
#include "finsent/econo.h"
#include "finsent/representations.h"
#include "finsent/sentindex.h"
#include "json.hpp"

namespace finsent {

// Bad or missing command-line input. The message names the flag.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  // inputs
  std::string db;
  std::string lexicon;
  std::string headlines;
  std::string instances;
  std::string model;
  std::string events;
  std::string calendar;
  std::string constituency;
  std::string series;
  std::string prices;
  // output directory; not part of the config hash
  std::string out = ".";

  uint64_t seed = 42;
  ReprKind repr = ReprKind::kUBT;
  LossKind loss = LossKind::kHinge;
  int splits = 31;
  double train_frac = 0.8;
  int epochs = 30;
  double learning_rate = 0.05;
  double l2 = 1e-4;
  size_t batch_size = 16;

  SessionHours session;
  UtcOffset timezone{std::chrono::minutes{330}};
  EmptyBucketPolicy policy = EmptyBucketPolicy::kSkip;
  size_t ma_window = 0;

  Measure measure = Measure::kS2;
  // regress defaults to log returns, var to percentage returns
  std::optional<ReturnKind> returns;
  int p1_max = 3;
  int p2_max = 3;
  double alpha = 0.1;
  bool intercept = true;
};

// Keys mirror the long flag names with '-' spelled '_'. Unknown keys are
// errors.
void ApplyConfigJson(const nlohmann::json& j, RunConfig* config);
void LoadConfigFile(const std::string& path, RunConfig* config);

nlohmann::json ConfigToJson(const RunConfig& config);
// FNV-1a 64 of the canonical config JSON without the output directory.
std::string ConfigHash(const RunConfig& config);

// Each command writes its artifacts under config.out, prints a report to
// `log`, and throws on error.
void RunRecognize(const RunConfig& config, std::ostream& log);
void RunTrain(const RunConfig& config, std::ostream& log);
void RunEval(const RunConfig& config, std::ostream& log);
void RunScore(const RunConfig& config, std::ostream& log);
void RunIndex(const RunConfig& config, std::ostream& log);
void RunRegress(const RunConfig& config, std::ostream& log);
void RunVar(const RunConfig& config, std::ostream& log);

// Runs one command by name; returns the process exit code and reports
// errors on `err`.
int Dispatch(const std::string& command, const RunConfig& config,
             std::ostream& log, std::ostream& err);

}  // namespace finsent

#endif  // FINSENT_COMMANDS_H_
