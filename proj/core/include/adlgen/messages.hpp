#pragma once

#include <string_view>
#include <vector>

namespace adlgen {

/// Serialized diagnostic writer. Generation may fan out across classes, but
/// every info/error line funnels through one sink.
class message_sink {
public:
    virtual ~message_sink() = default;
    virtual void info(std::string_view line) = 0;
    virtual void error(std::string_view line) = 0;
};

/// Collects lines in memory; handy for tests.
class capture_sink : public message_sink {
public:
    void info(std::string_view line) override { infos.emplace_back(line); }
    void error(std::string_view line) override { errors.emplace_back(line); }

    std::vector<std::string> infos;
    std::vector<std::string> errors;
};

}  // namespace adlgen
