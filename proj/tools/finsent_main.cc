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

#include <functional>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "finsent/commands.h"
#include "finsent/timeutil.h"

namespace {

using finsent::RunConfig;
using finsent::UsageError;

struct Applier {
  CLI::Option* option;
  std::function<void(RunConfig*)> apply;
};

// String-valued flags are parsed after the config file is applied, so a
// flag always wins over the file.
class FlagSet {
 public:
  explicit FlagSet(CLI::App* app) : app_(app) {}

  void Path(const std::string& name, std::string RunConfig::*field,
            const std::string& help) {
    auto* value = Store();
    Add(name, value, help, [value, field](RunConfig* c) { c->*field = *value; });
  }

  void Text(const std::string& name, const std::string& help,
            std::function<void(const std::string&, RunConfig*)> parse) {
    auto* value = Store();
    Add(name, value, help,
        [value, parse](RunConfig* c) { parse(*value, c); });
  }

  template <typename T>
  void Number(const std::string& name, T RunConfig::*field, const std::string& help) {
    auto* value = Store();
    Add(name, value, help, [value, field, name](RunConfig* c) {
      T parsed{};
      try {
        size_t used = 0;
        if constexpr (std::is_floating_point_v<T>) {
          parsed = static_cast<T>(std::stod(*value, &used));
        } else if constexpr (std::is_signed_v<T>) {
          parsed = static_cast<T>(std::stoll(*value, &used));
        } else {
          if (!value->empty() && value->front() == '-') throw std::invalid_argument("");
          parsed = static_cast<T>(std::stoull(*value, &used));
        }
        if (used != value->size()) throw std::invalid_argument("");
      } catch (const std::exception&) {
        throw UsageError("--" + name + ": invalid number '" + *value + "'");
      }
      c->*field = parsed;
    });
  }

  void Switch(const std::string& name, const std::string& help,
              std::function<void(RunConfig*)> apply) {
    appliers_.push_back({app_->add_flag("--" + name, help), std::move(apply)});
  }

  void ApplyTo(RunConfig* config) const {
    for (const auto& a : appliers_) {
      if (a.option->count() > 0) a.apply(config);
    }
  }

 private:
  std::string* Store() {
    storage_.push_back(std::make_unique<std::string>());
    return storage_.back().get();
  }

  void Add(const std::string& name, std::string* value, const std::string& help,
           std::function<void(RunConfig*)> apply) {
    appliers_.push_back({app_->add_option("--" + name, *value, help), std::move(apply)});
  }

  CLI::App* app_;
  std::vector<std::unique_ptr<std::string>> storage_;
  std::vector<Applier> appliers_;
};

void AddTrainingFlags(FlagSet& f) {
  f.Text("repr", "feature representation: UBT or LPS", [](const std::string& v, RunConfig* c) {
    auto k = finsent::ParseReprKind(v);
    if (!k) throw UsageError("--repr: expected UBT or LPS, got '" + v + "'");
    c->repr = *k;
  });
  f.Text("loss", "loss: hinge or softmax", [](const std::string& v, RunConfig* c) {
    auto k = finsent::ParseLossKind(v);
    if (!k) throw UsageError("--loss: expected hinge or softmax, got '" + v + "'");
    c->loss = *k;
  });
  f.Number("epochs", &RunConfig::epochs, "training epochs");
  f.Number("lr", &RunConfig::learning_rate, "learning rate");
  f.Number("l2", &RunConfig::l2, "L2 penalty");
  f.Number("batch-size", &RunConfig::batch_size, "mini-batch size");
}

void AddSessionFlags(FlagSet& f) {
  f.Text("session-open", "session open time HH:MM", [](const std::string& v, RunConfig* c) {
    c->session.open = finsent::ParseTimeOfDay(v);
  });
  f.Text("session-close", "session close time HH:MM", [](const std::string& v, RunConfig* c) {
    c->session.close = finsent::ParseTimeOfDay(v);
  });
  f.Text("timezone", "exchange UTC offset, e.g. +05:30", [](const std::string& v, RunConfig* c) {
    c->timezone = finsent::ParseUtcOffset(v);
  });
}

void AddReturnFlags(FlagSet& f) {
  f.Path("series", &RunConfig::series, "sentiment series CSV");
  f.Path("prices", &RunConfig::prices, "daily prices CSV (date,open,close)");
  f.Path("calendar", &RunConfig::calendar, "trading calendar CSV");
  f.Text("returns", "return kind: log or pct", [](const std::string& v, RunConfig* c) {
    auto k = finsent::ParseReturnKind(v);
    if (!k) throw UsageError("--returns: expected log or pct, got '" + v + "'");
    c->returns = *k;
  });
  AddSessionFlags(f);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entity-aware financial headline sentiment"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, seed_text, out_dir;
  auto* config_opt = app.add_option("--config", config_path, "JSON config file");
  auto* seed_opt = app.add_option("--seed", seed_text, "run seed");
  auto* out_opt = app.add_option("--out", out_dir, "output directory");

  std::map<std::string, std::unique_ptr<FlagSet>> flags;
  auto command = [&](const std::string& name, const std::string& help) -> FlagSet& {
    auto* sub = app.add_subcommand(name, help);
    return *(flags[name] = std::make_unique<FlagSet>(sub));
  };

  {
    auto& f = command("recognize", "find entity mentions and expand instances");
    f.Path("db", &RunConfig::db, "entity database (JSON or CSV)");
    f.Path("headlines", &RunConfig::headlines, "headlines CSV");
  }
  {
    auto& f = command("train", "train a classifier on labeled instances");
    f.Path("instances", &RunConfig::instances, "instances CSV");
    f.Path("lexicon", &RunConfig::lexicon, "lexicon TSV");
    AddTrainingFlags(f);
  }
  {
    auto& f = command("eval", "repeated random-split evaluation");
    f.Path("instances", &RunConfig::instances, "instances CSV");
    f.Path("lexicon", &RunConfig::lexicon, "lexicon TSV");
    AddTrainingFlags(f);
    f.Number("splits", &RunConfig::splits, "number of random splits");
    f.Number("train-frac", &RunConfig::train_frac, "training fraction");
  }
  {
    auto& f = command("score", "label instances with a trained model");
    f.Path("model", &RunConfig::model, "model JSON");
    f.Path("lexicon", &RunConfig::lexicon, "lexicon TSV");
    f.Path("instances", &RunConfig::instances, "instances CSV");
    f.Path("headlines", &RunConfig::headlines, "headlines CSV (with --db)");
    f.Path("db", &RunConfig::db, "entity database");
  }
  {
    auto& f = command("index", "bucket events into daily sentiment series");
    f.Path("events", &RunConfig::events, "events CSV");
    f.Path("calendar", &RunConfig::calendar, "trading calendar CSV");
    f.Path("constituency", &RunConfig::constituency, "constituency CSV (year,symbol)");
    AddSessionFlags(f);
    f.Text("policy", "empty bucket policy: skip or zero", [](const std::string& v, RunConfig* c) {
      if (v == "skip") c->policy = finsent::EmptyBucketPolicy::kSkip;
      else if (v == "zero") c->policy = finsent::EmptyBucketPolicy::kZero;
      else throw UsageError("--policy: expected skip or zero, got '" + v + "'");
    });
    f.Number("ma-window", &RunConfig::ma_window, "moving average window (0 = none)");
  }
  {
    auto& f = command("regress", "per-year returns on sentiment regressions");
    AddReturnFlags(f);
  }
  {
    auto& f = command("var", "per-year VAR lag scan");
    AddReturnFlags(f);
    f.Text("measure", "sentiment measure: s1 or s2", [](const std::string& v, RunConfig* c) {
      auto m = finsent::ParseMeasure(v);
      if (!m) throw UsageError("--measure: expected s1 or s2, got '" + v + "'");
      c->measure = *m;
    });
    f.Number("p1-max", &RunConfig::p1_max, "largest return lag");
    f.Number("p2-max", &RunConfig::p2_max, "largest sentiment lag");
    f.Number("alpha", &RunConfig::alpha, "significance level for flagging");
    f.Switch("no-intercept", "fit without an intercept",
             [](RunConfig* c) { c->intercept = false; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  const std::string name = app.get_subcommands().front()->get_name();
  RunConfig config;
  try {
    if (config_opt->count() > 0) finsent::LoadConfigFile(config_path, &config);
    if (seed_opt->count() > 0) {
      size_t used = 0;
      try {
        if (!seed_text.empty() && seed_text.front() == '-') throw std::invalid_argument("");
        config.seed = std::stoull(seed_text, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != seed_text.size()) {
        throw UsageError("--seed: invalid value '" + seed_text + "'");
      }
    }
    if (out_opt->count() > 0) config.out = out_dir;
    flags.at(name)->ApplyTo(&config);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return finsent::Dispatch(name, config, std::cout, std::cerr);
}
