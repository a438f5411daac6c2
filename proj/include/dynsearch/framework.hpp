#ifndef DYNSEARCH_FRAMEWORK_HPP
#define DYNSEARCH_FRAMEWORK_HPP

#include "dynsearch/info.hpp"
#include "dynsearch/sources.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <variant>
#include <vector>

namespace dynsearch {

enum class FrameworkResult { Solvable, Unsolvable, StepLimit };

std::string to_string(FrameworkResult r);

struct FrameworkState {
    std::vector<Info> infos;  // one per source, in source order
    std::vector<bool> known;
    std::optional<FrameworkResult> finished;
};

namespace op {
struct GenUnknown {
    Transition t;
    friend bool operator==(const GenUnknown&, const GenUnknown&) = default;
};
struct GenKnown {
    Transition t;
    friend bool operator==(const GenKnown&, const GenKnown&) = default;
};
struct Refine {
    StateId s;
    friend bool operator==(const Refine&, const Refine&) = default;
};
struct DeclareSolvable {
    friend bool operator==(const DeclareSolvable&, const DeclareSolvable&) = default;
};
struct DeclareUnsolvable {
    friend bool operator==(const DeclareUnsolvable&, const DeclareUnsolvable&) = default;
};
}  // namespace op

using FrameworkOperation = std::variant<op::GenUnknown, op::GenKnown, op::Refine, op::DeclareSolvable,
                                        op::DeclareUnsolvable>;

nlohmann::json operation_to_json(const FrameworkOperation& o, const TransitionSystem& ts);

/// Sources participate in every update and refine, in order.
class Framework {
public:
    Framework(const TransitionSystem& ts, std::vector<SourcePtr> sources);

    const TransitionSystem& system() const { return ts_; }
    const std::vector<SourcePtr>& sources() const { return sources_; }

    FrameworkState initial_state() const;

    /// Operations whose guards hold, ordered GenUnknown, GenKnown (both in
    /// transition order), Refine (state order), DeclareSolvable,
    /// DeclareUnsolvable. Throws ContractViolation on a finished state.
    std::vector<FrameworkOperation> applicable_operations(const FrameworkState& st) const;

    bool is_applicable(const FrameworkState& st, const FrameworkOperation& o) const;

    /// Re-checks the guard and throws ContractViolation when it fails.
    FrameworkState apply_operation(FrameworkState st, const FrameworkOperation& o) const;

private:
    const TransitionSystem& ts_;
    std::vector<SourcePtr> sources_;
};

class Policy {
public:
    virtual ~Policy() = default;
    virtual FrameworkOperation choose(const FrameworkState& st, std::span<const FrameworkOperation> applicable) = 0;
};

/// Picks Refine/GenKnown with probability initial * decay^k on its k-th
/// decision (when any is applicable), otherwise a uniformly random
/// GenUnknown or Declare operation.
class RandomPolicy final : public Policy {
public:
    explicit RandomPolicy(std::uint64_t seed, double initial = 0.5, double decay = 0.95);
    FrameworkOperation choose(const FrameworkState& st, std::span<const FrameworkOperation> applicable) override;

private:
    std::mt19937_64 rng_;
    double probability_;
    double decay_;
};

/// First GenUnknown while any is applicable, then the applicable Declare.
class GenUnknownFirstPolicy final : public Policy {
public:
    FrameworkOperation choose(const FrameworkState& st, std::span<const FrameworkOperation> applicable) override;
};

/// Replays a fixed list, then repeats its last entry.
class ScriptedPolicy final : public Policy {
public:
    explicit ScriptedPolicy(std::vector<FrameworkOperation> script);
    FrameworkOperation choose(const FrameworkState& st, std::span<const FrameworkOperation> applicable) override;

private:
    std::vector<FrameworkOperation> script_;
    std::size_t next_ = 0;
};

struct FrameworkRun {
    FrameworkResult result = FrameworkResult::StepLimit;
    std::vector<FrameworkOperation> operations;
    /// Update and refine events in application order.
    std::vector<InfoEvent> events;
    std::size_t gen_unknown_count = 0;
    FrameworkState final_state;
};

using FrameworkObserver = std::function<void(const FrameworkState&, const FrameworkOperation&)>;

/// Applies policy choices until a Declare operation or step_limit operations.
/// Throws ContractViolation when the policy picks an inapplicable operation.
FrameworkRun run_policy(const Framework& fw, Policy& policy, std::size_t step_limit,
                        const FrameworkObserver& observer = {});

}  // namespace dynsearch

#endif
