// Copyright 2026 The regeval Authors.
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


#include "regeval/harness.hpp"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <set>
#include <sstream>
#include <thread>

#include "regeval/error.hpp"

namespace regeval {

std::string_view status_name(ResponseStatus status) {
  return status == ResponseStatus::kOk ? "ok" : "exhausted_retries";
}

ResponseStatus parse_status(std::string_view name) {
  if (name == "ok") return ResponseStatus::kOk;
  if (name == "exhausted_retries") return ResponseStatus::kExhaustedRetries;
  throw Error(ErrorCode::kInvalidRecord, "unknown response status '" + std::string(name) + "'");
}

bool canonical_less(const ResponseRecord& a, const ResponseRecord& b) {
  if (a.model != b.model) return a.model < b.model;
  if (a.task != b.task) return a.task < b.task;
  if (a.law != b.law) return a.law < b.law;
  if (a.task == 1) return a.key < b.key;
  return a.pointer < b.pointer;
}

void RunConfig::validate() const {
  const auto fail = [](const std::string& what) { throw Error(ErrorCode::kInvalidConfig, what); };
  if (temperature < 0) fail("temperature must be >= 0");
  if (max_tokens <= 0) fail("max_tokens must be > 0");
  if (timeout.count() <= 0) fail("timeout must be > 0");
  if (retries < 0) fail("retries must be >= 0");
  if (backoff.count() < 0) fail("backoff must be >= 0");
  if (monitor_interval.count() <= 0) fail("monitor_interval must be > 0");
  if (models.empty()) fail("model list is empty");
  if (std::set<std::string>(models.begin(), models.end()).size() != models.size()) {
    fail("model list has duplicates");
  }
  if (tasks.empty()) fail("task list is empty");
  for (int t : tasks) {
    if (t != 1 && t != 2) fail("tasks must be 1 or 2");
  }
}

std::vector<std::string> RunConfig::overrides() const {
  const RunConfig d;
  std::vector<std::string> out;
  const auto note = [&](const std::string& field, const auto& value) {
    std::ostringstream os;
    os << field << "=" << value;
    out.push_back(os.str());
  };
  if (temperature != d.temperature) note("temperature", temperature);
  if (max_tokens != d.max_tokens) note("max_tokens", max_tokens);
  if (timeout != d.timeout) note("timeout_ms", timeout.count());
  if (retries != d.retries) note("retries", retries);
  if (concurrency != d.concurrency) note("concurrency", concurrency);
  if (backoff != d.backoff) note("backoff_ms", backoff.count());
  if (context_lines != d.context_lines) note("context_lines", context_lines);
  if (monitor_interval != d.monitor_interval) note("monitor_interval_ms", monitor_interval.count());
  if (tasks != d.tasks) {
    std::string t;
    for (int x : tasks) t += (t.empty() ? "" : ",") + std::to_string(x);
    note("tasks", t);
  }
  return out;
}

PromptTemplate PromptTemplate::defaults(const Jurisdiction& law) {
  PromptTemplate t;
  t.law = law.code();
  switch (law.code()) {
    case Law::kLGPD:
      t.scope =
          "Brazil's General Data Protection Law (LGPD) governs any processing of personal "
          "data of individuals located in Brazil, including processing performed by mobile "
          "and web applications.";
      break;
    case Law::kPDPA:
      t.scope =
          "Singapore's Personal Data Protection Act (PDPA) governs the collection, use and "
          "disclosure of personal data by organisations.";
      break;
    case Law::kPIPEDA:
      t.scope =
          "Canada's Personal Information Protection and Electronic Documents Act (PIPEDA) "
          "sets the fair information principles that private-sector organisations follow "
          "when handling personal information in commercial activity.";
      break;
  }
  t.cues = {
      "consent: personal data is collected or used without a valid legal basis or consent",
      "notice: users are not told what is collected, why, or with whom it is shared",
      "collection: more data is gathered than the stated purpose needs",
      "retention: data is kept longer than necessary or never deleted",
      "security: data is stored or transmitted without reasonable safeguards",
      "transfer: data leaves the jurisdiction or reaches third parties without safeguards",
  };
  t.exceptions = {
      "anonymized data that cannot reasonably be re-identified",
      "processing required to comply with a legal obligation",
      "purely personal or household use",
  };
  t.output_constraint =
      "Answer with native article identifiers of this law only, in the form \"" +
      law.citation_style() +
      "\", separated by commas and ordered from most to least relevant. Output nothing "
      "else. If no provision is implicated, answer NONE.";
  return t;
}

namespace {

void append_excerpt(std::ostringstream& os, const std::string& path, const Excerpt& excerpt,
                    std::size_t max_lines) {
  os << "--- " << path << ":" << format_span(excerpt.span) << "\n";
  std::istringstream in(excerpt.text);
  std::string line;
  std::size_t n = 0;
  while (n < max_lines && std::getline(in, line)) {
    os << line << "\n";
    ++n;
  }
}

void render_header(std::ostringstream& os, const PromptTemplate& tmpl) {
  os << "Jurisdiction: " << law_name(tmpl.law) << "\n";
  os << "Scope: " << tmpl.scope << "\n";
  os << "Decision cues:\n";
  for (const auto& c : tmpl.cues) os << "- " << c << "\n";
  os << "Exceptions:\n";
  for (const auto& e : tmpl.exceptions) os << "- " << e << "\n";
}

void check_law(const PromptTemplate& tmpl, Law law) {
  if (tmpl.law != law) {
    throw Error(ErrorCode::kLawMismatch, "template for " + std::string(law_name(tmpl.law)) +
                                             " cannot render a " +
                                             std::string(law_name(law)) + " instance");
  }
}

}  // namespace

std::vector<Task1Anchor> task1_anchors(const std::vector<Task1Record>& records) {
  std::vector<Task1Anchor> out;
  for (Granularity g : kAllGranularities) {
    for (const auto& k : task1_gold_keys(records, g)) {
      Task1Anchor a;
      a.law = k.record->law;
      a.key = k.key;
      if (k.line != nullptr) {
        a.context = k.line->excerpts;
      } else {
        std::set<Excerpt> all;
        for (const auto& line : k.record->lines) all.insert(line.excerpts.begin(), line.excerpts.end());
        a.context.assign(all.begin(), all.end());
      }
      out.push_back(std::move(a));
    }
  }
  return out;
}

std::vector<Task2Anchor> task2_anchors(const std::vector<Task2Record>& records) {
  std::vector<Task2Anchor> out;
  out.reserve(records.size());
  for (const auto& r : records) {
    out.push_back({r.law, r.pointer, r.repo_url, r.app_name, r.snippet});
  }
  return out;
}

std::string render_task1_prompt(const PromptTemplate& tmpl, const Task1Anchor& anchor,
                                std::size_t context_lines) {
  check_law(tmpl, anchor.law);
  std::ostringstream os;
  render_header(os, tmpl);
  os << "Task: localization. Link the code anchor below to the provisions of this law it "
        "implicates, ranked from most to least relevant.\n";
  const auto& id = anchor.key.identity;
  os << "Repository: " << id.repo_url << "\n";
  os << "App: " << id.app_name << "\n";
  os << "Commit: " << id.commit_id << "\n";
  os << "File: " << id.file_path << "\n";
  os << "Granularity: " << granularity_name(anchor.key.granularity) << "\n";
  if (anchor.key.granularity == Granularity::kModule) os << "Module: " << anchor.key.module << "\n";
  if (anchor.key.granularity == Granularity::kLine) {
    os << "Lines: " << format_span(anchor.key.span) << "\n";
  }
  os << "Context:\n";
  for (const auto& e : anchor.context) {
    append_excerpt(os, id.file_path, e, e.span.length() + 2 * context_lines);
  }
  os << "Output: " << tmpl.output_constraint << "\n";
  return os.str();
}

std::string render_task2_prompt(const PromptTemplate& tmpl, const Task2Anchor& anchor) {
  check_law(tmpl, anchor.law);
  std::ostringstream os;
  render_header(os, tmpl);
  os << "Task: judgment. List every provision of this law that the snippet below "
        "violates or implicates.\n";
  os << "Repository: " << anchor.repo_url << "\n";
  os << "App: " << anchor.app_name << "\n";
  os << "Commit: " << anchor.pointer.commit_id << "\n";
  os << "Pointer: " << anchor.pointer.file_path << ":" << format_span(anchor.pointer.span)
     << "\n";
  os << "Snippet:\n" << anchor.snippet;
  if (anchor.snippet.empty() || anchor.snippet.back() != '\n') os << "\n";
  os << "Output: " << tmpl.output_constraint << "\n";
  return os.str();
}

void Transport::validate(const RunConfig&) const {}

std::unique_ptr<ScriptedMockTransport> ScriptedMockTransport::echo(std::string text) {
  return std::make_unique<ScriptedMockTransport>(
      [text = std::move(text)](const TransportRequest&) { return TransportReply::success(text); });
}

std::unique_ptr<ScriptedMockTransport> ScriptedMockTransport::flaky(int failures, Script then) {
  return std::make_unique<ScriptedMockTransport>(
      [failures, then = std::move(then)](const TransportRequest& r) {
        if (r.attempt <= failures) {
          return TransportReply::failure("scripted failure " + std::to_string(r.attempt));
        }
        return then(r);
      });
}

std::unique_ptr<ScriptedMockTransport> ScriptedMockTransport::always_failing() {
  return std::make_unique<ScriptedMockTransport>(
      [](const TransportRequest&) { return TransportReply::failure("scripted outage"); });
}

namespace {

std::string request_key(const std::string& model, int task, Law law, const std::string& key) {
  return model + "\x1f" + std::to_string(task) + "\x1f" + std::string(law_name(law)) + "\x1f" +
         key;
}

}  // namespace

ReplayTransport::ReplayTransport(const std::vector<ResponseRecord>& records) {
  std::set<std::string> models;
  for (const auto& r : records) {
    const std::string key = r.task == 1 ? r.key.to_string() : r.pointer.to_string();
    by_request_[request_key(r.model, r.task, r.law, key)] = r;
    models.insert(r.model);
  }
  models_.assign(models.begin(), models.end());
}

void ReplayTransport::validate(const RunConfig& config) const {
  for (const auto& m : config.models) {
    if (!std::binary_search(models_.begin(), models_.end(), m)) {
      throw Error(ErrorCode::kTransportConfigError, "replay log has no responses for model '" +
                                                        m + "'");
    }
  }
}

TransportReply ReplayTransport::send(const TransportRequest& request) {
  const auto it = by_request_.find(request_key(request.model, request.task, request.law, request.key));
  if (it == by_request_.end()) return TransportReply::failure("not in replay log");
  if (it->second.status != ResponseStatus::kOk) return TransportReply::failure("replayed failure");
  return TransportReply::success(it->second.text);
}

namespace {

struct WorkItem {
  int task = 1;
  Law law = Law::kLGPD;
  Task1Key key;
  Task2Pointer pointer;
  std::string key_text;
  std::string prompt;
};

class RunLog {
 public:
  explicit RunLog(std::ostream* sink) : sink_(sink) {}

  void write(const std::string& line) {
    std::lock_guard<std::mutex> lock(mu_);
    text_ << line << "\n";
    if (sink_ != nullptr) *sink_ << line << std::endl;
  }
  std::string str() const {
    std::lock_guard<std::mutex> lock(mu_);
    return text_.str();
  }

 private:
  mutable std::mutex mu_;
  std::ostringstream text_;
  std::ostream* sink_;
};

std::int64_t now_ms() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

std::vector<WorkItem> build_work(const RunConfig& config, const GoldViews& views,
                                 const JurisdictionRegistry& registry,
                                 const RunOptions& options) {
  std::set<Law> laws;
  for (const auto& [law, _] : views.task1) laws.insert(law);
  for (const auto& [law, _] : views.task2) laws.insert(law);
  const bool want1 = std::find(config.tasks.begin(), config.tasks.end(), 1) != config.tasks.end();
  const bool want2 = std::find(config.tasks.begin(), config.tasks.end(), 2) != config.tasks.end();

  std::vector<WorkItem> work;
  for (Law law : laws) {
    const auto t = options.templates.find(law);
    const PromptTemplate tmpl =
        t != options.templates.end() ? t->second : PromptTemplate::defaults(registry.at(law));
    if (want1) {
      if (const auto it = views.task1.find(law); it != views.task1.end()) {
        for (const auto& a : task1_anchors(it->second)) {
          WorkItem w;
          w.task = 1;
          w.law = law;
          w.key = a.key;
          w.key_text = a.key.to_string();
          w.prompt = render_task1_prompt(tmpl, a, config.context_lines);
          work.push_back(std::move(w));
        }
      }
    }
    if (want2) {
      if (const auto it = views.task2.find(law); it != views.task2.end()) {
        for (const auto& a : task2_anchors(it->second)) {
          WorkItem w;
          w.task = 2;
          w.law = law;
          w.pointer = a.pointer;
          w.key_text = a.pointer.to_string();
          w.prompt = render_task2_prompt(tmpl, a);
          work.push_back(std::move(w));
        }
      }
    }
  }
  return work;
}

}  // namespace

RunResult execute_run(const RunConfig& config, const GoldViews& views,
                      const JurisdictionRegistry& registry, Transport& transport,
                      const RunOptions& options) {
  config.validate();
  transport.validate(config);

  const std::vector<WorkItem> work = build_work(config, views, registry, options);
  RunLog log(options.log_sink);
  {
    std::ostringstream os;
    os << "run: models=" << config.models.size() << " requests_per_model=" << work.size()
       << " lanes=" << config.effective_concurrency();
    log.write(os.str());
    for (const auto& o : config.overrides()) log.write("override: " + o);
  }

  const std::size_t n_models = config.models.size();
  std::vector<std::vector<ResponseRecord>> lane_records(n_models);
  std::vector<LaneStats> lane_stats(n_models);
  for (auto& s : lane_stats) s.total = work.size();
  std::mutex stats_mu;

  std::atomic<std::size_t> next_lane{0};
  std::atomic<std::size_t> in_flight{0};
  std::atomic<std::size_t> peak{0};

  const auto run_lane = [&](std::size_t lane) {
    const std::string& model = config.models[lane];
    auto& records = lane_records[lane];
    records.reserve(work.size());
    for (const auto& item : work) {
      ResponseRecord rec;
      rec.model = model;
      rec.task = item.task;
      rec.law = item.law;
      rec.key = item.key;
      rec.pointer = item.pointer;
      rec.requested_at_ms = now_ms();
      rec.status = ResponseStatus::kExhaustedRetries;

      for (int attempt = 1; attempt <= config.retries + 1; ++attempt) {
        TransportRequest req;
        req.model = model;
        req.task = item.task;
        req.law = item.law;
        req.key = item.key_text;
        req.prompt = item.prompt;
        req.temperature = config.temperature;
        req.max_tokens = config.max_tokens;
        req.timeout = config.timeout;
        req.attempt = attempt;
        const auto started = std::chrono::steady_clock::now();
        req.deadline = started + config.timeout;

        const std::size_t now_in_flight = ++in_flight;
        std::size_t seen = peak.load();
        while (now_in_flight > seen && !peak.compare_exchange_weak(seen, now_in_flight)) {
        }
        TransportReply reply;
        try {
          reply = transport.send(req);
        } catch (const std::exception& e) {
          reply = TransportReply::failure(e.what());
        }
        --in_flight;
        const auto elapsed = std::chrono::steady_clock::now() - started;
        if (reply.ok && elapsed > config.timeout) {
          reply = TransportReply::failure(
              "timeout after " +
              std::to_string(std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count()) +
              " ms");
        }
        rec.attempts = attempt;
        if (reply.ok) {
          rec.status = ResponseStatus::kOk;
          rec.text = std::move(reply.text);
          rec.last_error.clear();
          break;
        }
        rec.last_error = reply.error;
        {
          std::lock_guard<std::mutex> lock(stats_mu);
          ++lane_stats[lane].failed_attempts;
        }
        log.write(model + " " + item.key_text + " attempt " + std::to_string(attempt) +
                  " failed: " + reply.error);
        if (attempt <= config.retries && config.backoff.count() > 0) {
          std::this_thread::sleep_for(config.backoff);
        }
      }
      rec.completed_at_ms = now_ms();
      if (rec.status != ResponseStatus::kOk) {
        log.write(model + " " + item.key_text + " exhausted retries");
      }
      {
        std::lock_guard<std::mutex> lock(stats_mu);
        ++lane_stats[lane].done;
        if (rec.status != ResponseStatus::kOk) ++lane_stats[lane].exhausted;
      }
      records.push_back(std::move(rec));
    }
  };

  std::mutex monitor_mu;
  std::condition_variable monitor_cv;
  bool finished = false;
  const auto progress_line = [&] {
    std::ostringstream os;
    os << "progress:";
    std::lock_guard<std::mutex> lock(stats_mu);
    for (std::size_t i = 0; i < n_models; ++i) {
      os << " " << config.models[i] << "=" << lane_stats[i].done << "/" << lane_stats[i].total;
    }
    return os.str();
  };
  std::thread monitor([&] {
    std::unique_lock<std::mutex> lock(monitor_mu);
    while (!monitor_cv.wait_for(lock, config.monitor_interval, [&] { return finished; })) {
      log.write(progress_line());
    }
  });

  std::vector<std::thread> workers;
  for (std::size_t w = 0; w < config.effective_concurrency(); ++w) {
    workers.emplace_back([&] {
      for (std::size_t lane = next_lane++; lane < n_models; lane = next_lane++) run_lane(lane);
    });
  }
  for (auto& t : workers) t.join();
  {
    std::lock_guard<std::mutex> lock(monitor_mu);
    finished = true;
  }
  monitor_cv.notify_all();
  monitor.join();
  log.write(progress_line());

  RunResult result;
  for (std::size_t i = 0; i < n_models; ++i) {
    result.lanes[config.models[i]] = lane_stats[i];
    for (auto& r : lane_records[i]) result.records.push_back(std::move(r));
  }
  std::stable_sort(result.records.begin(), result.records.end(), canonical_less);
  result.peak_in_flight = peak.load();
  log.write("run complete: records=" + std::to_string(result.records.size()));
  result.log = log.str();
  return result;
}

}  // namespace regeval
