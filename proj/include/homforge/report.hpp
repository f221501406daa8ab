#pragma once

#include <chrono>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "homforge/graph_io.hpp"

namespace homforge {

// Exit codes shared by the CLI and the acceptance driver.
enum ExitCode : int {
    exit_ok = 0,
    exit_fail = 1,
    exit_usage = 2,
    exit_guard = 3,
};

struct CheckResult {
    std::string name;
    std::string verdict;  // pass | fail | skipped
    OrderedJson details;  // optional counterexample payload

    static CheckResult pass(std::string name) { return {std::move(name), "pass", {}}; }
    static CheckResult fail(std::string name, OrderedJson details = {}) {
        return {std::move(name), "fail", std::move(details)};
    }
    static CheckResult skipped(std::string name, OrderedJson details = {}) {
        return {std::move(name), "skipped", std::move(details)};
    }
};

/// Machine-readable run report. Everything except the timing block is a
/// deterministic function of the inputs, so re-runs are byte-identical apart
/// from "timing_ms".
struct Report {
    std::string command;
    OrderedJson config;
    std::vector<CheckResult> checks;
    OrderedJson payload;  // command-specific output (hom lists, traces, ...)
    double timing_ms = 0.0;

    void add(CheckResult c) { checks.push_back(std::move(c)); }

    int failures() const {
        int n = 0;
        for (const auto& c : checks)
            if (c.verdict == "fail") ++n;
        return n;
    }
    int skips() const {
        int n = 0;
        for (const auto& c : checks)
            if (c.verdict == "skipped") ++n;
        return n;
    }
    int passes() const {
        int n = 0;
        for (const auto& c : checks)
            if (c.verdict == "pass") ++n;
        return n;
    }

    int exit_code() const {
        if (failures() > 0) return exit_fail;
        if (passes() == 0 && skips() > 0) return exit_guard;
        return exit_ok;
    }

    OrderedJson to_json() const {
        OrderedJson j;
        j["command"] = command;
        j["config"] = config;
        OrderedJson cs = OrderedJson::array();
        for (const auto& c : checks) {
            OrderedJson cj;
            cj["name"] = c.name;
            cj["verdict"] = c.verdict;
            if (!c.details.is_null()) cj["details"] = c.details;
            cs.push_back(std::move(cj));
        }
        j["checks"] = std::move(cs);
        if (!payload.is_null()) j["payload"] = payload;
        j["summary"] = {{"pass", passes()}, {"fail", failures()}, {"skipped", skips()}};
        j["timing_ms"] = timing_ms;
        return j;
    }

    std::string to_text() const {
        std::string out = "# " + command + "\n";
        for (const auto& c : checks) {
            out += "[" + c.verdict + "] " + c.name + "\n";
            if (c.verdict == "fail" && !c.details.is_null())
                out += "    " + c.details.dump() + "\n";
        }
        out += "pass " + std::to_string(passes()) + ", fail " + std::to_string(failures()) +
               ", skipped " + std::to_string(skips()) + "\n";
        return out;
    }
};

class Timer {
public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    double ms() const {
        auto d = std::chrono::steady_clock::now() - start_;
        return std::chrono::duration<double, std::milli>(d).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

inline int emit_report(Report& report, const Timer& timer, const std::string& out_path,
                       const std::string& format) {
    report.timing_ms = timer.ms();
    std::string text = format == "text" ? report.to_text() : report.to_json().dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream os(out_path);
        if (!os) {
            std::cerr << "cannot open output file " << out_path << "\n";
            return exit_usage;
        }
        os << text;
    }
    return report.exit_code();
}

}  // namespace homforge
