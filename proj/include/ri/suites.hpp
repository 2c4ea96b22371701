#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ri/corpus.hpp"
#include "ri/profile.hpp"

namespace ri {

struct Assertion {
    std::string id;
    bool pass = false;
    double measured = 0.0;
    double tolerance = 0.0;
    std::string witness;  // CSV or note, only when informative
};

struct SuiteResult {
    std::string suite;
    std::uint64_t seed = 0;
    std::size_t corpus_size = 0;
    std::vector<Assertion> assertions;
    std::int64_t runtime_ms = 0;  // zero unless timing was requested

    bool all_pass() const;
};

struct SuiteOptions {
    std::uint64_t seed = 42;
    std::size_t size = 200;
    bool timing = false;  // keep reports byte-identical by default
};

struct UnknownSuite : std::runtime_error {
    explicit UnknownSuite(const std::string& name, const std::vector<std::string>& registry);
    std::vector<std::string> registry;
};

std::vector<std::string> suite_registry();
SuiteResult run_suite(const std::string& name, const SuiteOptions& opts = {});
std::vector<SuiteResult> run_all(const SuiteOptions& opts = {});

// K-functional checks for one profile over a corpus (also available through
// run_suite("kfunctional")).
SuiteResult kfunctional_check(const Profile& I, const Corpus& corpus);

std::string to_json(const SuiteResult& result);
std::string to_json(const std::vector<SuiteResult>& results);

}  // namespace ri
