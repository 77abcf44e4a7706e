#include "aqftop/report.hpp"

namespace aqftop {

Family& Report::family(const std::string& name) {
  for (auto& f : families_) {
    if (f.name == name) return f;
  }
  Family f;
  f.name = name;
  families_.push_back(std::move(f));
  return families_.back();
}

const Family* Report::find(const std::string& name) const {
  for (const auto& f : families_) {
    if (f.name == name) return &f;
  }
  return nullptr;
}

bool Report::expect(const std::string& family_name, bool ok,
                    const std::function<std::string()>& witness) {
  Family& f = family(family_name);
  ++f.checked;
  if (!ok && f.passed) {
    f.passed = false;
    f.witness = witness ? witness() : std::string();
  }
  return ok;
}

void Report::fail(const std::string& family_name, std::string witness) {
  Family& f = family(family_name);
  ++f.checked;
  if (f.passed) {
    f.passed = false;
    f.witness = std::move(witness);
  }
}

void Report::merge(const Report& other, const std::string& prefix) {
  for (const auto& f : other.families_) {
    Family& mine = family(prefix + f.name);
    mine.checked += f.checked;
    if (!f.passed && mine.passed) {
      mine.passed = false;
      mine.witness = f.witness;
    }
  }
  for (const auto& n : other.notes_) notes_.push_back(n);
}

bool Report::passed() const {
  for (const auto& f : families_) {
    if (!f.passed) return false;
  }
  return true;
}

bool Report::family_passed(const std::string& name) const {
  const Family* f = find(name);
  return f == nullptr || f->passed;
}

std::string Report::human() const {
  std::string out = subject_ + ": " + (passed() ? "PASS" : "FAIL") + "\n";
  for (const auto& f : families_) {
    out += "  " + std::string(f.passed ? "pass " : "FAIL ") + f.name + " (" +
           std::to_string(f.checked) + " checked)\n";
    if (!f.passed) out += "    witness: " + f.witness + "\n";
  }
  for (const auto& n : notes_) out += "  note: " + n + "\n";
  return out;
}

nlohmann::json Report::json() const {
  nlohmann::json fams = nlohmann::json::array();
  for (const auto& f : families_) {
    nlohmann::json j{{"family", f.name}, {"passed", f.passed}, {"checked", f.checked}};
    if (!f.passed) j["witness"] = f.witness;
    fams.push_back(std::move(j));
  }
  return {{"subject", subject_},
          {"verdict", passed() ? "pass" : "fail"},
          {"families", std::move(fams)},
          {"notes", notes_}};
}

}  // namespace aqftop
