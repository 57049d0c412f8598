#include "arbiter/registry.hpp"

#include "arbiter/codec.hpp"
#include "arbiter/diagnostics.hpp"
#include "arbiter/rule_lang.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>

namespace arbiter {

namespace fs = std::filesystem;

namespace {

[[noreturn]] void io_error(const std::string& message) { throw Error(Code::IoError, message); }

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) io_error("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) io_error("cannot write " + p.string());
  out << content;
  out.flush();
  if (!out) io_error("short write to " + p.string());
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

bool valid_app_id(std::string_view id) {
  if (id.empty() || id.size() > 64) return false;
  auto lower_or_digit = [](char c) { return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9'); };
  if (!lower_or_digit(id.front())) return false;
  for (char c : id) {
    if (!lower_or_digit(c) && c != '_' && c != '-') return false;
  }
  return true;
}

ApplicationRecord build_record(const std::string& app_id, const RegistrationRequest& req) {
  if (req.sbp.has_value() == req.grg.has_value()) {
    throw Error(Code::InvalidRequest, "registration needs exactly one of a policy (sbp) or a theory (grg)");
  }
  ApplicationRecord rec;
  rec.app_id = app_id;
  try {
    if (req.sbp) {
      rec.source_sbp = *req.sbp;
      const PolicyDocument doc = parse_policy(*req.sbp);
      rec.theory = compile_policy(doc, req.mode);
      rec.mode = req.mode;
      rec.name = req.name.empty() ? doc.name : req.name;
    } else {
      rec.source_grg = *req.grg;
      rec.theory = parse_theory(*req.grg);
      rec.name = req.name.empty() ? app_id : req.name;
    }
  } catch (const DiagnosticsError&) {
    throw;
  } catch (const Error& e) {
    throw DiagnosticsError({e.diagnostic()});
  }
  auto diags = validate_theory(rec.theory);
  if (has_errors(diags)) throw DiagnosticsError(std::move(diags));
  rec.metadata = metadata_of(rec.theory);
  rec.created_at = utc_now();
  return rec;
}

ApplicationRecord load_application_dir(const fs::path& dir) {
  if (!fs::exists(dir / "revision")) io_error(dir.string() + " is not a complete application folder");
  ApplicationRecord rec;
  rec.app_id = dir.filename().string();
  try {
    rec.revision = std::stoi(read_file(dir / "revision"));
    const auto info = codec::json::parse(read_file(dir / "record.json"));
    rec.name = info.at("name").get<std::string>();
    rec.created_at = info.value("created_at", "");
    if (info.contains("mode") && !info["mode"].is_null()) {
      rec.mode = parse_compile_mode(info["mode"].get<std::string>());
    }
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    io_error("corrupt application folder " + dir.string() + ": " + e.what());
  }
  if (fs::exists(dir / "source.sbp")) rec.source_sbp = read_file(dir / "source.sbp");
  if (fs::exists(dir / "source.grg")) rec.source_grg = read_file(dir / "source.grg");
  rec.theory = parse_theory(read_file(dir / "theory.grg"));
  rec.metadata = metadata_of(rec.theory);
  if (codec::to_json(rec.metadata) != codec::json::parse(read_file(dir / "metadata.json"))) {
    io_error("metadata of " + dir.string() + " does not match its theory");
  }
  return rec;
}

Registry::Registry(fs::path root) : root_(std::move(root)) {
  fs::create_directories(root_);
  // A crash between the two renames of persist() leaves only the old copy.
  for (const auto& entry : fs::directory_iterator(root_)) {
    const std::string name = entry.path().filename().string();
    if (name.rfind(".old-", 0) == 0) {
      const fs::path live = root_ / name.substr(5);
      if (fs::exists(live)) {
        fs::remove_all(entry.path());
      } else {
        fs::rename(entry.path(), live);
      }
    } else if (name.rfind(".staging-", 0) == 0) {
      fs::remove_all(entry.path());
    }
  }
  for (const auto& entry : fs::directory_iterator(root_)) {
    if (!entry.is_directory() || !valid_app_id(entry.path().filename().string())) continue;
    if (!fs::exists(entry.path() / "revision")) continue;
    auto rec = std::make_shared<const ApplicationRecord>(load_application_dir(entry.path()));
    apps_.emplace(rec->app_id, std::move(rec));
  }
}

std::vector<std::shared_ptr<const ApplicationRecord>> Registry::list() const {
  std::shared_lock lock(apps_mutex_);
  std::vector<std::shared_ptr<const ApplicationRecord>> out;
  for (const auto& [id, rec] : apps_) out.push_back(rec);
  return out;
}

std::shared_ptr<const ApplicationRecord> Registry::get(const std::string& app_id) const {
  std::shared_lock lock(apps_mutex_);
  auto it = apps_.find(app_id);
  return it == apps_.end() ? nullptr : it->second;
}

std::mutex& Registry::writer_lock(const std::string& app_id) {
  std::lock_guard lock(writers_mutex_);
  auto& m = writers_[app_id];
  if (!m) m = std::make_unique<std::mutex>();
  return *m;
}

std::shared_ptr<const ApplicationRecord> Registry::register_application(const std::string& app_id,
                                                                        const RegistrationRequest& req) {
  if (!valid_app_id(app_id)) {
    throw Error(Diagnostic{Severity::Error, Code::InvalidRequest,
                           "application id '" + app_id + "' must match [a-z0-9][a-z0-9_-]*", 0, 0, app_id, {}});
  }
  ApplicationRecord rec = build_record(app_id, req);

  std::lock_guard writer(writer_lock(app_id));
  if (auto previous = get(app_id)) rec.revision = previous->revision + 1;
  persist(rec);
  auto published = std::make_shared<const ApplicationRecord>(std::move(rec));
  std::unique_lock lock(apps_mutex_);
  apps_[app_id] = published;
  return published;
}

void Registry::persist(const ApplicationRecord& rec) const {
  const fs::path stage = root_ / (".staging-" + rec.app_id);
  const fs::path live = root_ / rec.app_id;
  const fs::path old = root_ / (".old-" + rec.app_id);
  std::error_code ec;
  fs::remove_all(stage, ec);
  fs::create_directories(stage);

  if (!rec.source_sbp.empty()) write_file(stage / "source.sbp", rec.source_sbp);
  if (!rec.source_grg.empty()) write_file(stage / "source.grg", rec.source_grg);
  write_file(stage / "theory.grg", render_theory(rec.theory));
  write_file(stage / "metadata.json", codec::to_json(rec.metadata).dump(2) + "\n");
  codec::json info{{"name", rec.name}, {"created_at", rec.created_at}};
  info["mode"] = rec.mode ? codec::json(std::string(to_string(*rec.mode))) : codec::json(nullptr);
  write_file(stage / "record.json", info.dump(2) + "\n");
  write_file(stage / "revision", std::to_string(rec.revision) + "\n");

  fs::remove_all(old, ec);
  if (fs::exists(live)) fs::rename(live, old);
  fs::rename(stage, live);
  fs::remove_all(old, ec);
}

}  // namespace arbiter
