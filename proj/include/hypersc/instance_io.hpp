// Copyright 2026 The Authors.
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

// Line-oriented campaign instance files.
//
//   Q <int> AREA <xmin> <ymin> <xmax> <ymax>
//   T <id> <x> <y> <r> <s> <delta>
//   W <id> <period> <x> <y>
//   C <period> <worker_id> <task_id>...
//
// T/W records describe a geometric instance; C records state per-period
// coverage directly (fixture form). In a C-record instance, tasks are
// synthesized with release = first appearance and duration spanning their
// appearances, and worker arrivals are synthesized at the origin.

#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "hypersc/detail/text.hpp"
#include "hypersc/errors.hpp"
#include "hypersc/model.hpp"

namespace hypersc {

inline CampaignInstance read_instance(std::istream& in, const std::string& name = "<stream>") {
  CampaignInstance instance;
  bool have_header = false;
  std::string line;
  int line_no = 0;
  struct Span {
    int first = 0;
    int last = 0;
  };
  std::map<TaskId, Span> explicit_spans;
  std::map<std::pair<int, WorkerId>, bool> explicit_arrivals;

  while (std::getline(in, line)) {
    ++line_no;
    const std::string context = name + ":" + std::to_string(line_no);
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag[0] == '#') continue;
    std::vector<std::string> tokens;
    for (std::string t; ls >> t;) tokens.push_back(t);

    if (tag == "Q") {
      if (tokens.size() != 6 || tokens[1] != "AREA")
        throw IoError(context + ": expected 'Q <int> AREA <xmin> <ymin> <xmax> <ymax>'");
      instance.num_periods = static_cast<int>(detail::parse_int(tokens[0], context));
      instance.area = {detail::parse_double(tokens[2], context), detail::parse_double(tokens[3], context),
                       detail::parse_double(tokens[4], context), detail::parse_double(tokens[5], context)};
      have_header = true;
    } else if (tag == "T") {
      if (tokens.size() != 6) throw IoError(context + ": expected 'T <id> <x> <y> <r> <s> <delta>'");
      TaskSpec t;
      t.id = detail::parse_int(tokens[0], context);
      t.location = {detail::parse_double(tokens[1], context), detail::parse_double(tokens[2], context)};
      t.radius = detail::parse_double(tokens[3], context);
      t.release_period = static_cast<int>(detail::parse_int(tokens[4], context));
      t.duration = static_cast<int>(detail::parse_int(tokens[5], context));
      instance.tasks.push_back(t);
    } else if (tag == "W") {
      if (tokens.size() != 4) throw IoError(context + ": expected 'W <id> <period> <x> <y>'");
      WorkerArrival w;
      w.worker_id = detail::parse_int(tokens[0], context);
      w.period = static_cast<int>(detail::parse_int(tokens[1], context));
      w.location = {detail::parse_double(tokens[2], context), detail::parse_double(tokens[3], context)};
      instance.arrivals.push_back(w);
    } else if (tag == "C") {
      if (tokens.size() < 2) throw IoError(context + ": expected 'C <period> <worker_id> <task_id>...'");
      ExplicitCoverage c;
      c.period = static_cast<int>(detail::parse_int(tokens[0], context));
      c.worker = detail::parse_int(tokens[1], context);
      for (std::size_t i = 2; i < tokens.size(); ++i) {
        const TaskId t = detail::parse_int(tokens[i], context);
        c.tasks.push_back(t);
        auto [it, inserted] = explicit_spans.try_emplace(t, Span{c.period, c.period});
        if (!inserted) {
          it->second.first = std::min(it->second.first, c.period);
          it->second.last = std::max(it->second.last, c.period);
        }
      }
      explicit_arrivals[{c.period, c.worker}] = true;
      instance.explicit_coverage.push_back(std::move(c));
    } else {
      throw IoError(context + ": unknown record tag '" + tag + "'");
    }
  }
  if (!have_header) throw IoError(name + ": missing 'Q ... AREA ...' header");

  if (!instance.explicit_coverage.empty()) {
    if (!instance.tasks.empty() || !instance.arrivals.empty())
      throw IoError(name + ": C records cannot be mixed with T/W records");
    if (!instance.area.valid()) instance.area = {-1.0, -1.0, 1.0, 1.0};
    for (const auto& [id, span] : explicit_spans) {
      TaskSpec t;
      t.id = id;
      t.location = {0.0, 0.0};
      t.radius = 1.0;
      t.release_period = span.first;
      t.duration = span.last - span.first + 1;
      instance.tasks.push_back(t);
    }
    for (const auto& [key, unused] : explicit_arrivals)
      instance.arrivals.push_back({key.second, key.first, Point{0.0, 0.0}});
  }

  instance.sort_for_replay();
  instance.validate();
  return instance;
}

inline CampaignInstance read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open instance file '" + path + "'");
  return read_instance(in, path);
}

inline void write_instance(const CampaignInstance& instance, std::ostream& out) {
  out << "Q " << instance.num_periods << " AREA " << detail::format_double(instance.area.xmin)
      << ' ' << detail::format_double(instance.area.ymin) << ' '
      << detail::format_double(instance.area.xmax) << ' '
      << detail::format_double(instance.area.ymax) << '\n';
  if (instance.is_explicit()) {
    for (const auto& c : instance.explicit_coverage) {
      out << "C " << c.period << ' ' << c.worker;
      for (TaskId t : c.tasks) out << ' ' << t;
      out << '\n';
    }
    return;
  }
  for (const auto& t : instance.tasks) {
    out << "T " << t.id << ' ' << detail::format_double(t.location.x) << ' '
        << detail::format_double(t.location.y) << ' ' << detail::format_double(t.radius) << ' '
        << t.release_period << ' ' << t.duration << '\n';
  }
  for (const auto& w : instance.arrivals) {
    out << "W " << w.worker_id << ' ' << w.period << ' ' << detail::format_double(w.location.x)
        << ' ' << detail::format_double(w.location.y) << '\n';
  }
}

inline void write_instance_file(const CampaignInstance& instance, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write instance file '" + path + "'");
  write_instance(instance, out);
  if (!out) throw IoError("write failed for instance file '" + path + "'");
}

}  // namespace hypersc
