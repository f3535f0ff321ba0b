#!/usr/bin/env python3
# Copyright 2026 The finsent Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Writes the demo fixtures under data/demo.

Usage: tools/make_demo.py [output_dir]

The output is a function of the fixed seed only.
"""

import csv
import datetime as dt
import json
import math
import os
import random
import sys

SEED = 20140101

ENTITIES = {
    "RELIANCE": {"official_name": "Reliance Industries Ltd.",
                 "other_forms": ["Reliance", "RIL", "Reliance Industries"]},
    "TCS": {"official_name": "Tata Consultancy Services Ltd.",
            "other_forms": ["TCS", "Tata Consultancy"]},
    "INFY": {"official_name": "Infosys Ltd.", "other_forms": ["Infosys"]},
    "HDFCBANK": {"official_name": "HDFC Bank Ltd.", "other_forms": ["HDFC Bank"]},
    "SBIN": {"official_name": "State Bank of India", "other_forms": ["SBI"]},
    "TATAMOTORS": {"official_name": "Tata Motors Ltd.",
                   "other_forms": ["Tata Motors", "TaMo"]},
    "ITC": {"official_name": "ITC Ltd.", "other_forms": ["ITC"]},
    "CHAMBLFERT": {"official_name": "Chambal Fertilisers and Chemicals Ltd.",
                   "other_forms": ["Chambal", "Chambal Fertilisers"]},
    "ADVANTA": {"official_name": "Advanta India Ltd.", "other_forms": ["Advanta"]},
}

# Advanta is outside the demo index, so its events show up as exclusions.
INDEX_MEMBERS = [s for s in ENTITIES if s != "ADVANTA"]

LEXICON = [
    ("profit", "PositiveIfUp", "CUSTOM"),
    ("profits", "PositiveIfUp", "CUSTOM"),
    ("revenue", "PositiveIfUp", "CUSTOM"),
    ("margin", "PositiveIfUp", "CUSTOM"),
    ("sales", "PositiveIfUp", "CUSTOM"),
    ("loss", "NegativeIfUp", "CUSTOM"),
    ("loss", "Negative", "MPQA"),
    ("costs", "NegativeIfUp", "CUSTOM"),
    ("debt", "NegativeIfUp", "CUSTOM"),
    ("rises", "Up", "CUSTOM"),
    ("jumps", "Up", "CUSTOM"),
    ("surges", "Up", "CUSTOM"),
    ("widens", "Up", "CUSTOM"),
    ("gains", "Up", "CUSTOM"),
    ("raised", "Up", "CUSTOM"),
    ("falls", "Down", "CUSTOM"),
    ("declines", "Down", "CUSTOM"),
    ("slips", "Down", "CUSTOM"),
    ("narrows", "Down", "CUSTOM"),
    ("cut", "Down", "CUSTOM"),
    ("strong", "Positive", "MPQA"),
    ("robust", "Positive", "GI"),
    ("wins", "Positive", "GI"),
    ("buy", "Positive", "CUSTOM"),
    ("upgrade", "Positive", "LM"),
    ("beats", "Positive", "LM"),
    ("positive", "Positive", "MPQA"),
    ("weak", "Negative", "MPQA"),
    ("sell", "Negative", "CUSTOM"),
    ("downgrade", "Negative", "LM"),
    ("misses", "Negative", "LM"),
    ("penalty", "Negative", "LM"),
    ("probe", "Negative", "LM"),
    ("negative", "Negative", "MPQA"),
    ("board", "Neutral", "MALO"),
    ("meeting", "Neutral", "MALO"),
    ("results", "Neutral", "MALO"),
    ("appoints", "Neutral", "MALO"),
    ("not", "Negator", "MPQA"),
    ("no", "Negator", "MPQA"),
]

POSITIVE = [
    "{a} Q3 profit rises {n}% on strong demand",
    "{a} wins order worth Rs {m} crore",
    "Buy {a}, target raised to Rs {p}",
    "{a} revenue jumps {n}% as margin gains",
    "Brokerages upgrade {a} after robust quarter",
    "{a} narrows loss to Rs {m} crore",
    "{a} beats estimates, profit surges {n}%",
]
NEGATIVE = [
    "{a} Q3 profit falls {n}% on weak demand",
    "{a} loss widens to Rs {m} crore",
    "Sell {a}: analysts downgrade on weak outlook",
    "{a} misses estimates as costs jump {n}%",
    "{a} faces penalty of Rs {m} crore",
    "Regulator orders probe into {a} accounts",
    "{a} revenue declines {n}%, margin slips",
]
NEUTRAL = [
    "{a} board meeting on dividend next week",
    "{a} appoints new chief financial officer",
    "{a} to announce results on {day}",
    "{a} schedules analyst meeting in Mumbai",
    "{a} shifts registered office",
]
PAIRS = [
    ("{a} profit rises {n}%, {b} slips on weak sales", "positive", "negative"),
    ("{a} wins contract from {b}", "positive", "neutral"),
    ("{a} beats {b} in quarterly revenue", "positive", "negative"),
    ("Positive on {a}, {b}: analyst", "positive", "positive"),
    ("Negative on {a}, {b}: analyst", "negative", "negative"),
    ("{a} loss widens; {b} board meeting on Friday", "negative", "neutral"),
]
MARKET_WIDE = [
    "Sensex ends flat ahead of policy meeting",
    "Rupee steady against dollar in early trade",
    "Markets await inflation data",
]
DAYS = ["Monday", "Tuesday", "Wednesday", "Thursday", "Friday"]

HOLIDAYS = {dt.date(2014, 2, 27), dt.date(2014, 3, 17), dt.date(2014, 4, 8),
            dt.date(2014, 4, 14), dt.date(2014, 4, 18), dt.date(2014, 4, 24)}
# Shortened session for the demo calendar's override column.
SHORT_DAY = dt.date(2014, 3, 31)
# No headlines on this day, so its buckets are empty.
QUIET_DAY = dt.date(2014, 2, 11)

OPEN = dt.time(9, 30)
CLOSE = dt.time(15, 30)


def trading_days():
  d = dt.date(2014, 1, 1)
  out = []
  while d <= dt.date(2014, 4, 30):
    if d.weekday() < 5 and d not in HOLIDAYS:
      out.append(d)
    d += dt.timedelta(days=1)
  return out


def session(day):
  close = dt.time(13, 0) if day == SHORT_DAY else CLOSE
  return dt.datetime.combine(day, OPEN), dt.datetime.combine(day, close)


def fill(template, rng, a, b=None):
  return template.format(a=a, b=b, n=rng.randint(2, 40), m=rng.randint(5, 900),
                         p=rng.randint(100, 3000), day=rng.choice(DAYS))


def name_of(rng, symbol):
  rec = ENTITIES[symbol]
  return rng.choice([rec["official_name"]] + rec["other_forms"])


def make_headline(rng):
  """Returns (text, {symbol: label})."""
  r = rng.random()
  if r < 0.06:
    return rng.choice(MARKET_WIDE), {}
  if r < 0.26:
    a, b = rng.sample(sorted(ENTITIES), 2)
    template, la, lb = rng.choice(PAIRS)
    return fill(template, rng, name_of(rng, a), name_of(rng, b)), {a: la, b: lb}
  a = rng.choice(sorted(ENTITIES))
  label = rng.choices(["positive", "negative", "neutral"], [0.4, 0.35, 0.25])[0]
  pool = {"positive": POSITIVE, "negative": NEGATIVE, "neutral": NEUTRAL}[label]
  return fill(rng.choice(pool), rng, name_of(rng, a)), {a: label}


def format_ts(t, rng):
  if rng.random() < 0.3:
    return t.strftime("%Y-%m-%dT%H:%M:%S") + "+05:30"
  return t.strftime("%Y-%m-%d %H:%M")


def main():
  out_dir = sys.argv[1] if len(sys.argv) > 1 else os.path.join(
      os.path.dirname(os.path.abspath(__file__)), "..", "data", "demo")
  os.makedirs(out_dir, exist_ok=True)
  rng = random.Random(SEED)
  days = trading_days()

  with open(os.path.join(out_dir, "entities.json"), "w") as f:
    json.dump(ENTITIES, f, indent=2)
    f.write("\n")
  with open(os.path.join(out_dir, "lexicon.tsv"), "w") as f:
    f.write("word\tfeature\tsource\n")
    for row in LEXICON:
      f.write("\t".join(row) + "\n")
  with open(os.path.join(out_dir, "calendar.csv"), "w", newline="") as f:
    w = csv.writer(f, lineterminator="\n")
    w.writerow(["date", "open", "close"])
    for d in days:
      w.writerow([d.isoformat(), "", "13:00" if d == SHORT_DAY else ""])
  with open(os.path.join(out_dir, "constituency.csv"), "w", newline="") as f:
    w = csv.writer(f, lineterminator="\n")
    w.writerow(["year", "symbol"])
    for s in INDEX_MEMBERS:
      w.writerow([2014, s])

  rows = []
  after_score = []
  for i, d in enumerate(days):
    if d == QUIET_DAY:
      after_score.append(0.0)
      continue
    open_t, close_t = session(d)
    last = i + 1 == len(days)
    next_open = None if last else session(days[i + 1])[0]
    pos = neg = 0
    for _ in range(rng.randint(4, 9)):
      after = not last and rng.random() < 0.55
      if after:
        span = (next_open - close_t).total_seconds()
        t = close_t + dt.timedelta(seconds=rng.randrange(int(span)))
      else:
        span = (close_t - open_t).total_seconds()
        t = open_t + dt.timedelta(seconds=rng.randrange(int(span)))
      t = t.replace(second=0)
      text, labels = make_headline(rng)
      if after:
        for s, label in labels.items():
          if s in INDEX_MEMBERS:
            pos += label == "positive"
            neg += label == "negative"
      rows.append((t, text, labels))
    after_score.append((pos - neg) / (pos + neg) if pos + neg else 0.0)

  with open(os.path.join(out_dir, "headlines.csv"), "w", newline="") as f:
    w = csv.writer(f, lineterminator="\n")
    w.writerow(["id", "timestamp", "headline", "labels"])
    for k, (t, text, labels) in enumerate(rows):
      w.writerow([f"h{k + 1:04d}", format_ts(t, rng), text,
                  json.dumps(labels, sort_keys=True) if labels else ""])

  # Next-open gap follows after-market sentiment plus noise.
  with open(os.path.join(out_dir, "prices.csv"), "w", newline="") as f:
    w = csv.writer(f, lineterminator="\n")
    w.writerow(["date", "open", "close"])
    open_px = 6300.0
    for i, d in enumerate(days):
      close_px = open_px * math.exp(rng.gauss(0.0, 0.008))
      w.writerow([d.isoformat(), f"{open_px:.2f}", f"{close_px:.2f}"])
      open_px = close_px * math.exp(0.004 * after_score[i] + rng.gauss(0.0, 0.003))


if __name__ == "__main__":
  main()
