#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace aqftop {

/// One axiom family: how many instances were checked and the first failure.
struct Family {
  std::string name;
  bool passed = true;
  std::size_t checked = 0;
  std::string witness;
};

/**
 * Verdict of a checker. Families keep insertion order, so output is
 * deterministic; only the first witness of each family is kept.
 */
class Report {
 public:
  explicit Report(std::string subject = {}) : subject_(std::move(subject)) {}

  const std::string& subject() const { return subject_; }
  const std::vector<Family>& families() const { return families_; }
  const std::vector<std::string>& notes() const { return notes_; }

  Family& family(const std::string& name);
  const Family* find(const std::string& name) const;

  /// Count one instance; on failure record the witness (built lazily).
  bool expect(const std::string& family_name, bool ok,
              const std::function<std::string()>& witness);
  void fail(const std::string& family_name, std::string witness);
  void note(std::string text) { notes_.push_back(std::move(text)); }

  /// Append all families of `other`, prefixing their names.
  void merge(const Report& other, const std::string& prefix = {});

  bool passed() const;
  bool family_passed(const std::string& name) const;

  std::string human() const;
  nlohmann::json json() const;

 private:
  std::string subject_;
  std::vector<Family> families_;
  std::vector<std::string> notes_;
};

/// Thrown by checkers running in stop-at-first-failure mode.
struct StopCheck {};

/// Tallies one family without going through Report on every instance.
class Tally {
 public:
  Tally(Report& rep, std::string family, bool stop_early)
      : rep_(rep), family_(std::move(family)), stop_early_(stop_early) {
    rep_.family(family_);
  }
  ~Tally() { rep_.family(family_).checked += count_; }

  template <class W>
  void expect(bool ok, W&& witness) {
    ++count_;
    if (ok) return;
    if (!failed_) {
      failed_ = true;
      Family& f = rep_.family(family_);
      f.passed = false;
      f.witness = witness();
    }
    if (stop_early_) {
      rep_.family(family_).checked += count_;
      count_ = 0;
      throw StopCheck{};
    }
  }
  bool failed() const { return failed_; }

 private:
  Report& rep_;
  std::string family_;
  bool stop_early_;
  bool failed_ = false;
  std::uint64_t count_ = 0;
};

}  // namespace aqftop
