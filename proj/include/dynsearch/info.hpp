#ifndef DYNSEARCH_INFO_HPP
#define DYNSEARCH_INFO_HPP

#include "dynsearch/error.hpp"
#include "dynsearch/transition_system.hpp"

#include <json.hpp>

#include <concepts>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <typeinfo>
#include <utility>
#include <vector>

namespace dynsearch {

inline std::size_t hash_combine(std::size_t seed, std::size_t value) {
    return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

/// Payload types stored in an Info must be comparable, hashable through an
/// ADL-visible `info_hash`, and printable through `info_to_json`.
template <class T>
concept InfoValue = std::equality_comparable<T> && std::copy_constructible<T> &&
                    requires(const T& v, const TransitionSystem& ts) {
                        { info_hash(v) } -> std::convertible_to<std::size_t>;
                        { info_to_json(v, ts) } -> std::convertible_to<nlohmann::json>;
                    };

namespace detail {

class PayloadBase {
public:
    virtual ~PayloadBase() = default;
    virtual bool equals(const PayloadBase& other) const = 0;
    virtual std::size_t hash() const = 0;
    virtual nlohmann::json to_json(const TransitionSystem& ts) const = 0;
    virtual std::shared_ptr<PayloadBase> clone() const = 0;
};

template <class T>
class Payload final : public PayloadBase {
public:
    explicit Payload(T v) : value(std::move(v)) {}

    bool equals(const PayloadBase& other) const override {
        auto* o = dynamic_cast<const Payload<T>*>(&other);
        return o != nullptr && o->value == value;
    }
    std::size_t hash() const override { return info_hash(value); }
    nlohmann::json to_json(const TransitionSystem& ts) const override { return info_to_json(value, ts); }
    std::shared_ptr<PayloadBase> clone() const override { return std::make_shared<Payload<T>>(value); }

    T value;
};

}  // namespace detail

/// An immutable information object. Copies share the payload; `mutate`
/// detaches first, so an Info that is moved through update/refine is edited
/// in place while every other copy keeps its value.
class Info {
public:
    Info() = default;

    template <InfoValue T>
    static Info make(T value) {
        Info info;
        info.payload_ = std::make_shared<detail::Payload<T>>(std::move(value));
        return info;
    }

    bool empty() const { return payload_ == nullptr; }

    template <class T>
    const T& get() const {
        return holder<T>().value;
    }

    template <class T>
    T& mutate() {
        if (payload_.use_count() > 1) {
            payload_ = payload_->clone();
        }
        return holder<T>().value;
    }

    std::size_t hash() const { return payload_ ? payload_->hash() : 0; }
    nlohmann::json to_json(const TransitionSystem& ts) const {
        return payload_ ? payload_->to_json(ts) : nlohmann::json();
    }

    friend bool operator==(const Info& a, const Info& b) {
        if (a.payload_ == b.payload_) {
            return true;
        }
        if (!a.payload_ || !b.payload_) {
            return false;
        }
        return a.payload_->equals(*b.payload_);
    }

private:
    template <class T>
    detail::Payload<T>& holder() const {
        auto* p = dynamic_cast<detail::Payload<T>*>(payload_.get());
        if (p == nullptr) {
            throw ContractViolation(std::string("information object does not hold ") + typeid(T).name());
        }
        return *p;
    }

    std::shared_ptr<detail::PayloadBase> payload_;
};

struct InfoHash {
    std::size_t operator()(const Info& info) const { return info.hash(); }
};

/// Initial object plus update (per transition) and refine (per state).
/// Implementations must be pure: equal inputs yield equal outputs.
class InformationSource {
public:
    virtual ~InformationSource() = default;

    virtual std::string name() const = 0;
    virtual Info initial() const = 0;
    virtual Info update(Info info, const Transition& t) const = 0;
    virtual Info refine(Info info, StateId s) const = 0;

    /// Whether `info` carries information about `s`. Only progression-based
    /// sources have undefined entries.
    virtual bool defined_at(const Info& info, StateId s) const {
        (void)info;
        (void)s;
        return true;
    }
};

using SourcePtr = std::shared_ptr<const InformationSource>;

// ---------------------------------------------------------------------------
// Progression sources

template <class P>
concept ProgressionSource = InfoValue<typename P::Payload> &&
                            requires(const P& p, const typename P::Payload& a, const Transition& t) {
                                { p.name() } -> std::convertible_to<std::string>;
                                { p.initial_state_info() } -> std::same_as<typename P::Payload>;
                                { p.progress(a, t) } -> std::same_as<typename P::Payload>;
                                { p.merge(a, a) } -> std::same_as<typename P::Payload>;
                            };

/// Partial function from states to per-state payloads.
template <class T>
struct PartialMap {
    std::vector<std::optional<T>> entries;

    const std::optional<T>& at(StateId s) const { return entries.at(index(s)); }
    friend bool operator==(const PartialMap&, const PartialMap&) = default;
};

template <class T>
std::size_t info_hash(const PartialMap<T>& map) {
    std::size_t h = map.entries.size();
    for (std::size_t i = 0; i < map.entries.size(); ++i) {
        if (map.entries[i]) {
            h = hash_combine(h, hash_combine(i, info_hash(*map.entries[i])));
        }
    }
    return h;
}

template <class T>
nlohmann::json info_to_json(const PartialMap<T>& map, const TransitionSystem& ts) {
    nlohmann::json out = nlohmann::json::object();
    for (std::size_t i = 0; i < map.entries.size(); ++i) {
        if (map.entries[i]) {
            out[ts.state_name(state_id(i))] = info_to_json(*map.entries[i], ts);
        }
    }
    return out;
}

/// Lifts a progression source to an information source over partial maps.
/// update(ι, <s,l,s'>) rebinds only s' to progress(ι(s), t), merged with the
/// previous ι(s') (passed first) when that was defined; refine is the identity.
template <ProgressionSource P>
class ProgressionBasedSource final : public InformationSource {
public:
    using Payload = typename P::Payload;
    using Map = PartialMap<Payload>;

    ProgressionBasedSource(P progression, std::size_t num_states, StateId init)
        : progression_(std::move(progression)), num_states_(num_states), init_(init) {}

    std::string name() const override { return progression_.name(); }

    Info initial() const override {
        Map map;
        map.entries.resize(num_states_);
        map.entries[index(init_)] = progression_.initial_state_info();
        return Info::make(std::move(map));
    }

    Info update(Info info, const Transition& t) const override {
        const auto& origin = info.get<Map>().entries.at(index(t.origin));
        if (!origin) {
            throw ContractViolation("update along a transition whose origin has no information (state id " +
                                    std::to_string(index(t.origin)) + ")");
        }
        Payload progressed = progression_.progress(*origin, t);
        auto& target = info.mutate<Map>().entries.at(index(t.target));
        if (target) {
            target = progression_.merge(*target, progressed);
        } else {
            target = std::move(progressed);
        }
        return info;
    }

    Info refine(Info info, StateId) const override { return info; }

    bool defined_at(const Info& info, StateId s) const override {
        return info.get<Map>().entries.at(index(s)).has_value();
    }

    const P& progression() const { return progression_; }

private:
    P progression_;
    std::size_t num_states_;
    StateId init_;
};

template <ProgressionSource P>
std::shared_ptr<const ProgressionBasedSource<P>> progression_to_information(P progression,
                                                                             const TransitionSystem& ts) {
    return std::make_shared<const ProgressionBasedSource<P>>(std::move(progression), ts.num_states(), ts.init());
}

}  // namespace dynsearch

#endif
