#pragma once
// Machine-readable verification reports. Reports are deterministic for a
// fixed (fixture, seed, flags) triple: checks keep insertion order, JSON keys
// are sorted by the serializer, and wall times are only emitted on request.

#include <chrono>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ainf/common.hpp"

namespace ainf {

struct CheckResult {
    std::string id;
    std::string status;  // pass | fail | diagnostic
    nlohmann::json witness = nlohmann::json::object();
    double wall_ms = 0.0;
};

class VerificationReport {
  public:
    explicit VerificationReport(std::string suite, std::uint64_t seed = 0)
        : suite_(std::move(suite)), seed_(seed) {}

    // runs fn, records pass/fail from its boolean result plus witness payload
    void run_check(const std::string& id,
                   const std::function<bool(nlohmann::json&)>& fn, bool diagnostic = false) {
        CheckResult r;
        r.id = id;
        auto t0 = std::chrono::steady_clock::now();
        bool ok = false;
        try {
            ok = fn(r.witness);
        } catch (const std::exception& e) {
            r.witness["error"] = e.what();
            ok = false;
        }
        auto t1 = std::chrono::steady_clock::now();
        r.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        r.status = diagnostic ? "diagnostic" : (ok ? "pass" : "fail");
        if (diagnostic) r.witness["diagnostic_ok"] = ok;
        checks_.push_back(std::move(r));
    }

    void add(CheckResult r) { checks_.push_back(std::move(r)); }

    bool all_passed() const {
        for (const auto& c : checks_)
            if (c.status == "fail") return false;
        return true;
    }

    const std::vector<CheckResult>& checks() const { return checks_; }

    nlohmann::json to_json(bool with_timings = false) const {
        nlohmann::json j;
        j["schema"] = "ainf-report/1";
        j["suite"] = suite_;
        j["seed"] = seed_;
        j["checks"] = nlohmann::json::array();
        int pass = 0, fail = 0, diag = 0;
        for (const auto& c : checks_) {
            nlohmann::json jc;
            jc["id"] = c.id;
            jc["status"] = c.status;
            jc["witness"] = c.witness;
            if (with_timings) jc["wall_ms"] = c.wall_ms;
            j["checks"].push_back(jc);
            if (c.status == "pass") ++pass;
            else if (c.status == "fail") ++fail;
            else ++diag;
        }
        j["summary"] = {{"pass", pass}, {"fail", fail}, {"diagnostic", diag}};
        return j;
    }

  private:
    std::string suite_;
    std::uint64_t seed_;
    std::vector<CheckResult> checks_;
};

}  // namespace ainf
