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

#include "finsent/commands.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

#include "finsent/csv.h"
#include "finsent/gazetteer.h"
#include "finsent/lexicon.h"
#include "finsent/text.h"

namespace finsent {
namespace {

namespace fs = std::filesystem;

void RequireInput(const std::string& path, std::string_view flag) {
  if (path.empty()) {
    throw UsageError("missing required flag --" + std::string(flag));
  }
  if (!fs::exists(path)) {
    throw UsageError("--" + std::string(flag) + ": file not found: " + path);
  }
}

std::string OutPath(const RunConfig& config, std::string_view name) {
  fs::create_directories(config.out);
  return (fs::path(config.out) / std::string(name)).string();
}

std::ofstream OpenOut(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  return out;
}

nlohmann::json Manifest(const RunConfig& config, std::string_view command) {
  return {{"tool", std::string(kToolName)},
          {"version", std::string(kToolVersion)},
          {"command", std::string(command)},
          {"seed", config.seed},
          {"config_hash", ConfigHash(config)}};
}

std::string ManifestLine(const RunConfig& config, std::string_view command) {
  return std::string(kToolName) + " " + std::string(kToolVersion) +
         " command=" + std::string(command) + " seed=" + std::to_string(config.seed) +
         " config=" + ConfigHash(config);
}

void WriteJson(const std::string& path, const nlohmann::json& j) {
  auto out = OpenOut(path);
  out << j.dump(2) << '\n';
}

nlohmann::json ReadJsonFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open file");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

MergedLexicon LoadLexicon(const RunConfig& config, std::ostream& log) {
  RequireInput(config.lexicon, "lexicon");
  const auto entries = LoadLexiconFile(config.lexicon);
  MergeResult merged = MergeDictionaries(entries);
  for (const auto& w : merged.warnings) log << "warning: " << w << '\n';
  return std::move(merged.lexicon);
}

struct InstanceRow {
  AnnotatedInstance instance;
  std::string timestamp;
};

std::vector<InstanceRow> ReadInstances(const std::string& path,
                                       bool require_label) {
  const CsvTable table = CsvTable::ReadFile(path);
  const size_t id_col = table.RequireColumn("headline_id");
  const size_t target_col = table.RequireColumn("target_symbol");
  const size_t tokens_col = table.RequireColumn("tokens");
  const auto ts_col = table.ColumnIndex("timestamp");
  std::optional<size_t> label_col = table.ColumnIndex("label");
  if (require_label && !label_col) label_col = table.RequireColumn("label");
  std::vector<InstanceRow> rows;
  for (const auto& row : table.rows()) {
    InstanceRow r;
    r.instance.headline_id = row.fields[id_col];
    r.instance.target_symbol = row.fields[target_col];
    r.instance.tokens = SplitWhitespace(row.fields[tokens_col]);
    if (ts_col) r.timestamp = std::string(Trim(row.fields[*ts_col]));
    if (label_col && !Trim(row.fields[*label_col]).empty()) {
      auto label = ParseSentiment(row.fields[*label_col]);
      if (!label) {
        throw ParseError(table.Where(row) + ": invalid label '" +
                         row.fields[*label_col] + "'");
      }
      r.instance.gold_label = label;
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<FeatureSequence> LabeledSequences(const std::vector<InstanceRow>& rows,
                                              const MergedLexicon& lexicon,
                                              std::ostream& log) {
  std::vector<FeatureSequence> seqs;
  size_t unlabeled = 0;
  for (const auto& r : rows) {
    if (!r.instance.gold_label) {
      ++unlabeled;
      continue;
    }
    seqs.push_back(Annotate(lexicon, r.instance));
  }
  if (unlabeled > 0) {
    log << "warning: skipped " << unlabeled << " instance(s) without a label\n";
  }
  if (seqs.empty()) throw ValidationError("no labeled instances");
  return seqs;
}

// Headline rows with their recognized instances.
struct RecognizedHeadline {
  std::string id;
  std::string timestamp;
  std::vector<EntityMention> mentions;
  std::vector<AnnotatedInstance> instances;
  std::vector<std::string> unresolved_labels;
};

std::vector<RecognizedHeadline> RecognizeHeadlines(const EntityDatabase& db,
                                                   const std::string& path) {
  const CsvTable table = CsvTable::ReadFile(path);
  const size_t id_col = table.RequireColumn("id");
  const size_t text_col = table.RequireColumn("headline");
  const auto ts_col = table.ColumnIndex("timestamp");
  const auto labels_col = table.ColumnIndex("labels");
  std::vector<RecognizedHeadline> out;
  for (const auto& row : table.rows()) {
    RecognizedHeadline h;
    h.id = row.fields[id_col];
    if (ts_col) h.timestamp = std::string(Trim(row.fields[*ts_col]));
    const std::string& text = row.fields[text_col];
    h.mentions = Recognize(db, text);
    h.instances = ExpandInstances(text, h.mentions, h.id);
    if (labels_col && !Trim(row.fields[*labels_col]).empty()) {
      nlohmann::json labels;
      try {
        labels = nlohmann::json::parse(row.fields[*labels_col]);
      } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(table.Where(row) + ": labels: " + e.what());
      }
      if (!labels.is_object()) {
        throw ParseError(table.Where(row) + ": labels must be a JSON object");
      }
      std::map<std::string, Sentiment> by_symbol;
      for (auto it = labels.begin(); it != labels.end(); ++it) {
        if (!it.value().is_string()) {
          throw ParseError(table.Where(row) + ": label for '" + it.key() +
                           "' must be a string");
        }
        auto s = ParseSentiment(it.value().get<std::string>());
        if (!s) {
          throw ParseError(table.Where(row) + ": invalid label '" +
                           it.value().get<std::string>() + "'");
        }
        std::optional<std::string> symbol;
        if (db.FindSymbol(it.key()) != nullptr) {
          symbol = it.key();
        } else {
          symbol = db.SymbolForPhrase(it.key());
        }
        if (!symbol) {
          h.unresolved_labels.push_back(it.key());
          continue;
        }
        by_symbol[*symbol] = *s;
      }
      for (auto& inst : h.instances) {
        auto it = by_symbol.find(inst.target_symbol);
        if (it != by_symbol.end()) inst.gold_label = it->second;
      }
      for (const auto& [symbol, s] : by_symbol) {
        const bool recognized =
            std::any_of(h.instances.begin(), h.instances.end(),
                        [&](const AnnotatedInstance& i) { return i.target_symbol == symbol; });
        if (!recognized) h.unresolved_labels.push_back(symbol);
      }
    }
    out.push_back(std::move(h));
  }
  return out;
}

TradingCalendar LoadCalendar(const RunConfig& config) {
  std::ifstream in(config.calendar, std::ios::binary);
  if (!in) throw ParseError(config.calendar + ": cannot open file");
  return LoadCalendarCsv(in, config.calendar, config.session, config.timezone);
}

SentimentSeries LoadAfterMarketSeries(const RunConfig& config) {
  RequireInput(config.series, "series");
  std::ifstream in(config.series, std::ios::binary);
  if (!in) throw ParseError(config.series + ": cannot open file");
  return LoadSeriesCsv(in, config.series, Duration::kAfterMarket);
}

ReturnSeries LoadReturns(const RunConfig& config, ReturnKind kind,
                         std::ostream& log) {
  RequireInput(config.prices, "prices");
  std::ifstream in(config.prices, std::ios::binary);
  if (!in) throw ParseError(config.prices + ": cannot open file");
  const auto bars = LoadPricesCsv(in, config.prices);
  std::optional<TradingCalendar> calendar;
  if (!config.calendar.empty()) {
    RequireInput(config.calendar, "calendar");
    calendar = LoadCalendar(config);
  }
  ReturnSeries r = AfterMarketReturns(bars, kind, calendar ? &*calendar : nullptr);
  if (!r.gaps.empty()) {
    log << "gaps: " << r.gaps.size() << " day(s) without a next-session bar\n";
  }
  return r;
}

std::string Range(std::span<const DatedValue> v) {
  if (v.empty()) return "(empty)";
  return FormatDate(v.front().day) + ".." + FormatDate(v.back().day);
}

// Joins and checks that the two series overlap at all.
JoinedSeries JoinOrThrow(std::span<const DatedValue> returns,
                         std::span<const DatedValue> sentiment) {
  JoinedSeries j = InnerJoin(returns, sentiment);
  if (j.days.empty()) {
    throw ValidationError("returns and sentiment series do not overlap: returns " +
                          Range(returns) + ", sentiment " + Range(sentiment));
  }
  return j;
}

std::map<int, JoinedSeries> SplitByYear(const JoinedSeries& j) {
  std::map<int, JoinedSeries> out;
  for (size_t i = 0; i < j.days.size(); ++i) {
    auto& y = out[YearOf(j.days[i])];
    y.days.push_back(j.days[i]);
    y.left.push_back(j.left[i]);
    y.right.push_back(j.right[i]);
  }
  return out;
}

std::string Fixed(double v, int digits) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

uint64_t Fnv1a(std::string_view s) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

template <typename T>
T Get(const nlohmann::json& j, std::string_view key) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw UsageError("config key '" + std::string(key) + "' has the wrong type");
  }
}

}  // namespace

void ApplyConfigJson(const nlohmann::json& j, RunConfig* c) {
  if (!j.is_object()) throw UsageError("config file must hold a JSON object");
  const std::map<std::string, std::string*> paths = {
      {"db", &c->db},           {"lexicon", &c->lexicon},
      {"headlines", &c->headlines}, {"instances", &c->instances},
      {"model", &c->model},     {"events", &c->events},
      {"calendar", &c->calendar}, {"constituency", &c->constituency},
      {"series", &c->series},   {"prices", &c->prices},
      {"out", &c->out}};
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    const auto& v = it.value();
    if (auto p = paths.find(key); p != paths.end()) {
      *p->second = Get<std::string>(v, key);
    } else if (key == "seed") {
      c->seed = Get<uint64_t>(v, key);
    } else if (key == "repr") {
      auto k = ParseReprKind(Get<std::string>(v, key));
      if (!k) throw UsageError("config: unknown repr");
      c->repr = *k;
    } else if (key == "loss") {
      auto k = ParseLossKind(Get<std::string>(v, key));
      if (!k) throw UsageError("config: unknown loss");
      c->loss = *k;
    } else if (key == "splits") {
      c->splits = Get<int>(v, key);
    } else if (key == "train_frac") {
      c->train_frac = Get<double>(v, key);
    } else if (key == "epochs") {
      c->epochs = Get<int>(v, key);
    } else if (key == "lr") {
      c->learning_rate = Get<double>(v, key);
    } else if (key == "l2") {
      c->l2 = Get<double>(v, key);
    } else if (key == "batch_size") {
      c->batch_size = Get<size_t>(v, key);
    } else if (key == "session_open") {
      c->session.open = ParseTimeOfDay(Get<std::string>(v, key));
    } else if (key == "session_close") {
      c->session.close = ParseTimeOfDay(Get<std::string>(v, key));
    } else if (key == "timezone") {
      c->timezone = ParseUtcOffset(Get<std::string>(v, key));
    } else if (key == "policy") {
      const auto s = Get<std::string>(v, key);
      if (s == "skip") c->policy = EmptyBucketPolicy::kSkip;
      else if (s == "zero") c->policy = EmptyBucketPolicy::kZero;
      else throw UsageError("config: policy must be skip or zero");
    } else if (key == "ma_window") {
      c->ma_window = Get<size_t>(v, key);
    } else if (key == "measure") {
      auto m = ParseMeasure(Get<std::string>(v, key));
      if (!m) throw UsageError("config: measure must be s1 or s2");
      c->measure = *m;
    } else if (key == "returns") {
      auto r = ParseReturnKind(Get<std::string>(v, key));
      if (!r) throw UsageError("config: returns must be log or pct");
      c->returns = *r;
    } else if (key == "p1_max") {
      c->p1_max = Get<int>(v, key);
    } else if (key == "p2_max") {
      c->p2_max = Get<int>(v, key);
    } else if (key == "alpha") {
      c->alpha = Get<double>(v, key);
    } else if (key == "intercept") {
      c->intercept = Get<bool>(v, key);
    } else {
      throw UsageError("config: unknown key '" + key + "'");
    }
  }
}

void LoadConfigFile(const std::string& path, RunConfig* config) {
  RequireInput(path, "config");
  std::ifstream in(path, std::ios::binary);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError("--config: " + path + ": " + e.what());
  }
  ApplyConfigJson(j, config);
}

nlohmann::json ConfigToJson(const RunConfig& c) {
  nlohmann::json j = {
      {"db", c.db},
      {"lexicon", c.lexicon},
      {"headlines", c.headlines},
      {"instances", c.instances},
      {"model", c.model},
      {"events", c.events},
      {"calendar", c.calendar},
      {"constituency", c.constituency},
      {"series", c.series},
      {"prices", c.prices},
      {"out", c.out},
      {"seed", c.seed},
      {"repr", std::string(ReprKindName(c.repr))},
      {"loss", std::string(LossKindName(c.loss))},
      {"splits", c.splits},
      {"train_frac", c.train_frac},
      {"epochs", c.epochs},
      {"lr", c.learning_rate},
      {"l2", c.l2},
      {"batch_size", c.batch_size},
      {"session_open", FormatTimeOfDay(c.session.open)},
      {"session_close", FormatTimeOfDay(c.session.close)},
      {"timezone", FormatUtcOffset(c.timezone)},
      {"policy", c.policy == EmptyBucketPolicy::kSkip ? "skip" : "zero"},
      {"ma_window", c.ma_window},
      {"measure", std::string(MeasureName(c.measure))},
      {"p1_max", c.p1_max},
      {"p2_max", c.p2_max},
      {"alpha", c.alpha},
      {"intercept", c.intercept}};
  if (c.returns) j["returns"] = std::string(ReturnKindName(*c.returns));
  return j;
}

std::string ConfigHash(const RunConfig& config) {
  nlohmann::json j = ConfigToJson(config);
  j.erase("out");
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(Fnv1a(j.dump())));
  return buf;
}

void RunRecognize(const RunConfig& config, std::ostream& log) {
  RequireInput(config.db, "db");
  RequireInput(config.headlines, "headlines");
  const EntityDatabase db = LoadEntityDb(config.db);
  const auto headlines = RecognizeHeadlines(db, config.headlines);

  auto mentions_out = OpenOut(OutPath(config, "mentions.csv"));
  auto instances_out = OpenOut(OutPath(config, "instances.csv"));
  CsvWriter mw(mentions_out), iw(instances_out);
  mw.Comment(ManifestLine(config, "recognize"));
  iw.Comment(ManifestLine(config, "recognize"));
  mw.WriteRow({"headline_id", "symbol", "span_start", "span_end", "matched_phrase"});
  iw.WriteRow({"headline_id", "timestamp", "target_symbol", "tokens", "label"});

  size_t n_instances = 0, n_mentions = 0, zero_entity = 0;
  std::vector<std::string> unresolved;
  for (const auto& h : headlines) {
    if (h.mentions.empty()) ++zero_entity;
    for (const auto& m : h.mentions) {
      mw.WriteRow({h.id, m.symbol, std::to_string(m.span_start),
                   std::to_string(m.span_end), m.matched_phrase});
      ++n_mentions;
    }
    for (const auto& inst : h.instances) {
      iw.WriteRow({h.id, h.timestamp, inst.target_symbol, Join(inst.tokens, " "),
                   inst.gold_label ? std::string(SentimentName(*inst.gold_label)) : ""});
      ++n_instances;
    }
    for (const auto& u : h.unresolved_labels) unresolved.push_back(h.id + ":" + u);
  }
  log << "headlines: " << headlines.size() << '\n'
      << "mentions: " << n_mentions << '\n'
      << "instances: " << n_instances << '\n'
      << "headlines without entities: " << zero_entity << '\n';
  if (!unresolved.empty()) {
    log << "labels not matched to a recognized entity: " << unresolved.size() << '\n';
    for (const auto& u : unresolved) log << "  " << u << '\n';
  }
}

void RunTrain(const RunConfig& config, std::ostream& log) {
  RequireInput(config.instances, "instances");
  const MergedLexicon lexicon = LoadLexicon(config, log);
  const auto rows = ReadInstances(config.instances, true);
  const auto seqs = LabeledSequences(rows, lexicon, log);
  const VectorSpace space = VectorSpace::Fit(config.repr, seqs);
  std::vector<LabeledVector> data;
  for (const auto& s : seqs) data.push_back({space.Transform(s), *s.label});
  TrainConfig tc;
  tc.loss = config.loss;
  tc.learning_rate = config.learning_rate;
  tc.epochs = config.epochs;
  tc.l2 = config.l2;
  tc.batch_size = config.batch_size;
  tc.seed = config.seed;
  const LinearModel model = Train(space, data, tc);
  size_t correct = 0;
  for (const auto& ex : data) correct += Predict(model, ex.x).label == ex.y;

  nlohmann::json j = model.ToJson();
  j["manifest"] = Manifest(config, "train");
  WriteJson(OutPath(config, "model.json"), j);
  log << "trained " << LossKindName(config.loss) << " model on " << data.size()
      << " instances, " << ReprKindName(config.repr) << " dimension "
      << space.dimension() << '\n'
      << "training accuracy: "
      << Fixed(static_cast<double>(correct) / static_cast<double>(data.size()), 4)
      << '\n';
}

void RunEval(const RunConfig& config, std::ostream& log) {
  RequireInput(config.instances, "instances");
  const MergedLexicon lexicon = LoadLexicon(config, log);
  const auto rows = ReadInstances(config.instances, true);
  const auto seqs = LabeledSequences(rows, lexicon, log);
  ProtocolConfig pc;
  pc.repr = config.repr;
  pc.train.loss = config.loss;
  pc.train.learning_rate = config.learning_rate;
  pc.train.epochs = config.epochs;
  pc.train.l2 = config.l2;
  pc.train.batch_size = config.batch_size;
  pc.splits = config.splits;
  pc.train_frac = config.train_frac;
  pc.seed = config.seed;
  const EvalReport report = EvaluateProtocol(seqs, pc);

  auto splits_out = OpenOut(OutPath(config, "eval_splits.csv"));
  CsvWriter w(splits_out);
  w.Comment(ManifestLine(config, "eval"));
  w.WriteRow({"split", "class", "accuracy", "f1"});
  for (size_t k = 0; k < report.splits.size(); ++k) {
    for (auto s : kAllSentiments) {
      const auto& m = report.splits[k].per_class[SentimentIndex(s)];
      w.WriteRow({std::to_string(k), std::string(SentimentName(s)),
                  FormatDouble(m.accuracy), FormatDouble(m.f1)});
    }
  }
  nlohmann::json summary = EvalSummaryJson(report);
  summary["train_frac"] = config.train_frac;
  summary["manifest"] = Manifest(config, "eval");
  WriteJson(OutPath(config, "eval_summary.json"), summary);

  log << ReprKindName(config.repr) << " + " << LossKindName(config.loss) << ", "
      << report.splits.size() << " splits (median / mean / sd)\n";
  for (auto s : kAllSentiments) {
    const auto& a = report.accuracy[SentimentIndex(s)];
    const auto& f = report.f1[SentimentIndex(s)];
    log << "  " << std::left << std::setw(9) << SentimentName(s) << " accuracy "
        << Fixed(a.median, 4) << " / " << Fixed(a.mean, 4) << " / " << Fixed(a.sd, 4)
        << "   f1 " << Fixed(f.median, 4) << " / " << Fixed(f.mean, 4) << " / "
        << Fixed(f.sd, 4) << '\n';
  }
}

void RunScore(const RunConfig& config, std::ostream& log) {
  RequireInput(config.model, "model");
  const LinearModel model = LinearModel::FromJson(ReadJsonFile(config.model));
  const MergedLexicon lexicon = LoadLexicon(config, log);

  std::vector<InstanceRow> rows;
  size_t zero_entity = 0;
  if (!config.instances.empty()) {
    RequireInput(config.instances, "instances");
    rows = ReadInstances(config.instances, false);
  } else if (!config.headlines.empty()) {
    RequireInput(config.headlines, "headlines");
    RequireInput(config.db, "db");
    const EntityDatabase db = LoadEntityDb(config.db);
    for (auto& h : RecognizeHeadlines(db, config.headlines)) {
      if (h.instances.empty()) ++zero_entity;
      for (auto& inst : h.instances) rows.push_back({std::move(inst), h.timestamp});
    }
  } else {
    throw UsageError("score needs --instances, or --headlines with --db");
  }

  auto out = OpenOut(OutPath(config, "events.csv"));
  CsvWriter w(out);
  w.Comment(ManifestLine(config, "score"));
  w.WriteRow({"id", "timestamp", "symbol", "label"});
  std::array<size_t, kNumSentiments> counts{};
  for (const auto& r : rows) {
    if (r.timestamp.empty()) {
      throw ValidationError("instance of headline '" + r.instance.headline_id +
                            "' has no timestamp");
    }
    const FeatureSequence seq = Annotate(lexicon, r.instance);
    const Prediction p = Predict(model, model.space().Transform(seq));
    ++counts[SentimentIndex(p.label)];
    w.WriteRow({r.instance.headline_id, r.timestamp, r.instance.target_symbol,
                std::string(SentimentName(p.label))});
  }
  log << "events: " << rows.size() << " (positive " << counts[0] << ", negative "
      << counts[1] << ", neutral " << counts[2] << ")\n";
  if (config.instances.empty()) {
    log << "headlines without entities: " << zero_entity << '\n';
  }
}

void RunIndex(const RunConfig& config, std::ostream& log) {
  RequireInput(config.events, "events");
  RequireInput(config.calendar, "calendar");
  std::ifstream events_in(config.events, std::ios::binary);
  const auto events = LoadEventsCsv(events_in, config.events, config.timezone);
  const TradingCalendar calendar = LoadCalendar(config);
  Constituency constituency;
  if (!config.constituency.empty()) {
    RequireInput(config.constituency, "constituency");
    std::ifstream in(config.constituency, std::ios::binary);
    constituency = LoadConstituencyCsv(in, config.constituency);
  }
  const BucketResult result =
      BucketSeries(events, calendar, constituency, config.policy);

  auto out = OpenOut(OutPath(config, "series.csv"));
  CsvWriter w(out);
  w.Comment(ManifestLine(config, "index"));
  const std::vector<SentimentSeries> series = {result.market, result.after_market};
  WriteSeriesCsv(out, series, config.ma_window);

  log << "events: " << events.size() << ", included " << result.included_events
      << ", excluded " << result.exclusions.total << '\n'
      << "rows: MARKET " << result.market.points.size() << ", AFTER_MARKET "
      << result.after_market.points.size() << '\n';
  for (const auto& [symbol, n] : result.exclusions.by_symbol) {
    log << "  excluded " << symbol << ": " << n << '\n';
  }
}

void RunRegress(const RunConfig& config, std::ostream& log) {
  const ReturnKind kind = config.returns.value_or(ReturnKind::kLog);
  const SentimentSeries series = LoadAfterMarketSeries(config);
  const ReturnSeries returns = LoadReturns(config, kind, log);

  std::map<Measure, std::map<int, JoinedSeries>> by_measure;
  for (Measure m : {Measure::kS1, Measure::kS2}) {
    const auto values = MeasureValues(series, m);
    by_measure[m] = SplitByYear(JoinOrThrow(returns.values, values));
  }
  std::set<int> years;
  for (const auto& [m, ys] : by_measure) {
    for (const auto& [y, j] : ys) years.insert(y);
  }

  nlohmann::json rows = nlohmann::json::array();
  nlohmann::json skipped = nlohmann::json::array();
  log << "after-market " << ReturnKindName(kind)
      << " returns on after-market sentiment\n"
      << std::left << std::setw(6) << "year" << std::setw(8) << "n(s1)"
      << std::setw(16) << "beta(s1)" << std::setw(10) << "r2(s1)" << std::setw(8)
      << "n(s2)" << std::setw(16) << "beta(s2)" << "r2(s2)\n";
  for (int year : years) {
    nlohmann::json row = {{"year", year}};
    std::ostringstream line;
    line << std::left << std::setw(6) << year;
    bool any = false;
    for (Measure m : {Measure::kS1, Measure::kS2}) {
      const auto& ys = by_measure[m];
      auto it = ys.find(year);
      const size_t n = it == ys.end() ? 0 : it->second.days.size();
      if (n < 30) {
        skipped.push_back({{"year", year},
                           {"measure", std::string(MeasureName(m))},
                           {"n", n},
                           {"reason", "fewer than 30 aligned days"}});
        line << std::setw(8) << n << std::setw(16) << "-" << std::setw(10) << "-";
        continue;
      }
      std::vector<DatedValue> d, s;
      for (size_t i = 0; i < n; ++i) {
        d.push_back({it->second.days[i], it->second.left[i]});
        s.push_back({it->second.days[i], it->second.right[i]});
      }
      const RegressionResult r = HypothesisTest(d, s);
      row[std::string(MeasureName(m))] = RegressionJson(r, false);
      const Coefficient& beta = *r.Find("beta");
      line << std::setw(8) << n << std::setw(16)
           << (Fixed(beta.estimate, 5) + HypothesisStars(beta.p_value))
           << std::setw(10) << Fixed(r.r_squared, 4);
      any = true;
    }
    log << line.str() << '\n';
    if (any) rows.push_back(std::move(row));
  }
  log << "* p < 0.1; ** p < 0.05; *** p < 0.01\n";
  if (rows.empty()) {
    throw ComputeError("no year has 30 aligned days of returns and sentiment");
  }
  nlohmann::json j = {{"returns", std::string(ReturnKindName(kind))},
                      {"years", std::move(rows)},
                      {"skipped", std::move(skipped)},
                      {"manifest", Manifest(config, "regress")}};
  WriteJson(OutPath(config, "regression.json"), j);
}

void RunVar(const RunConfig& config, std::ostream& log) {
  const ReturnKind kind = config.returns.value_or(ReturnKind::kPct);
  const SentimentSeries series = LoadAfterMarketSeries(config);
  const ReturnSeries returns = LoadReturns(config, kind, log);
  const auto values = MeasureValues(series, config.measure);
  const auto by_year = SplitByYear(JoinOrThrow(returns.values, values));

  nlohmann::json years = nlohmann::json::array();
  nlohmann::json skipped = nlohmann::json::array();
  const int max_p = std::max(config.p1_max, config.p2_max);
  for (const auto& [year, joined] : by_year) {
    std::vector<VarScanEntry> scan;
    try {
      scan = VarScan(joined.left, joined.right, config.p1_max, config.p2_max,
                     config.alpha, config.intercept);
    } catch (const ComputeError& e) {
      skipped.push_back({{"year", year}, {"n", joined.days.size()}, {"reason", e.what()}});
      continue;
    }
    log << "year " << year << ": " << joined.days.size() << " aligned days, "
        << ReturnKindName(kind) << " returns, sentiment " << MeasureName(config.measure)
        << '\n'
        << "  rank  VAR     " ;
    for (int k = 1; k <= max_p; ++k) log << std::left << std::setw(12) << ("d(t-" + std::to_string(k) + ")");
    for (int k = 1; k <= max_p; ++k) log << std::left << std::setw(12) << ("s(t-" + std::to_string(k) + ")");
    log << "BIC\n";
    nlohmann::json models = nlohmann::json::array();
    for (size_t rank = 0; rank < scan.size(); ++rank) {
      const auto& e = scan[rank];
      nlohmann::json m = RegressionJson(e.result, true);
      m["rank"] = rank + 1;
      m["p1"] = e.spec.p1;
      m["p2"] = e.spec.p2;
      m["significant"] = e.significant;
      models.push_back(std::move(m));

      std::ostringstream line;
      line << "  " << std::left << std::setw(4) << (rank + 1) << (e.significant ? "* " : "  ")
           << std::setw(8)
           << ("(" + std::to_string(e.spec.p1) + "," + std::to_string(e.spec.p2) + ")");
      for (const char* prefix : {"d", "s"}) {
        for (int k = 1; k <= max_p; ++k) {
          const auto* c = e.result.Find(std::string(prefix) + "(t-" + std::to_string(k) + ")");
          line << std::setw(12)
               << (c == nullptr ? std::string() : Fixed(c->estimate, 4) + VarStars(c->p_value));
        }
      }
      line << Fixed(e.result.bic, 2);
      log << line.str() << '\n';
    }
    years.push_back({{"year", year}, {"n", joined.days.size()}, {"models", std::move(models)}});
  }
  log << "+ p < 0.1; * p < 0.05; ** p < 0.01; *** p < 0.001; leading * marks a "
         "model with a significant regressor\n";
  if (years.empty()) throw ComputeError("no year has enough aligned days for the VAR scan");
  nlohmann::json j = {{"returns", std::string(ReturnKindName(kind))},
                      {"measure", std::string(MeasureName(config.measure))},
                      {"alpha", config.alpha},
                      {"years", std::move(years)},
                      {"skipped", std::move(skipped)},
                      {"manifest", Manifest(config, "var")}};
  WriteJson(OutPath(config, "var_scan.json"), j);
}

int Dispatch(const std::string& command, const RunConfig& config,
             std::ostream& log, std::ostream& err) {
  static const std::map<std::string, void (*)(const RunConfig&, std::ostream&)>
      kCommands = {{"recognize", RunRecognize}, {"train", RunTrain},
                   {"eval", RunEval},           {"score", RunScore},
                   {"index", RunIndex},         {"regress", RunRegress},
                   {"var", RunVar}};
  auto it = kCommands.find(command);
  if (it == kCommands.end()) {
    err << "error: unknown command '" << command << "'\n";
    return 2;
  }
  try {
    it->second(config, log);
    return 0;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << command << ": " << e.what() << '\n';
    return 1;
  }
}

}  // namespace finsent
