#pragma once

#include "arbiter/policy.hpp"

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

namespace arbiter {

/// One deployed revision of an application. Never mutated once published.
struct ApplicationRecord {
  std::string app_id;
  std::string name;
  int revision = 1;
  std::optional<CompileMode> mode;  // set when compiled from a policy
  Theory theory;
  ApplicationMetadata metadata;
  std::string source_sbp;
  std::string source_grg;
  std::string created_at;  // UTC, ISO 8601
};

/// Sources for registration: a policy (compiled in `mode`) or a rule theory.
struct RegistrationRequest {
  std::string name;
  std::optional<std::string> sbp;
  std::optional<std::string> grg;
  CompileMode mode = CompileMode::Advanced;
};

/// Compiles and validates the sources. Throws DiagnosticsError with every
/// diagnostic when parsing, compiling or validation reports an error.
ApplicationRecord build_record(const std::string& app_id, const RegistrationRequest& req);

/// `[a-z0-9][a-z0-9_-]*`, at most 64 characters.
bool valid_app_id(std::string_view id);

/// Reads one application folder (as written by Registry). Throws IoError.
ApplicationRecord load_application_dir(const std::filesystem::path& dir);

/// Directory of per-application folders:
///
///   <root>/<app_id>/source.sbp | source.grg
///                   theory.grg      compiled theory
///                   metadata.json
///                   record.json     name, mode, created_at
///                   revision        written last; folders without it are ignored
///
/// Readers get immutable snapshots; registration is serialized per app id.
class Registry {
 public:
  /// Creates `root` if needed and loads every complete application folder.
  explicit Registry(std::filesystem::path root);

  const std::filesystem::path& root() const noexcept { return root_; }

  std::vector<std::shared_ptr<const ApplicationRecord>> list() const;
  std::shared_ptr<const ApplicationRecord> get(const std::string& app_id) const;

  /// Builds, persists and publishes a new revision. Re-registering an id
  /// replaces its content and bumps the revision. Throws DiagnosticsError,
  /// InvalidRequest (bad id), IoError.
  std::shared_ptr<const ApplicationRecord> register_application(const std::string& app_id,
                                                                const RegistrationRequest& req);

 private:
  void persist(const ApplicationRecord& rec) const;
  std::mutex& writer_lock(const std::string& app_id);

  std::filesystem::path root_;
  mutable std::shared_mutex apps_mutex_;
  std::map<std::string, std::shared_ptr<const ApplicationRecord>> apps_;
  std::mutex writers_mutex_;
  std::map<std::string, std::unique_ptr<std::mutex>> writers_;
};

}  // namespace arbiter
