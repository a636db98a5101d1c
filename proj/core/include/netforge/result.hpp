#pragma once

#include <cassert>
#include <utility>
#include <variant>

namespace netforge {

/// Minimal expected-like carrier: holds either a value or a typed error.
/// Decoders and other total functions return this instead of throwing so
/// arbitrary input can never abort the process.
template <typename T, typename E>
class Result {
public:
    Result(T value) : state_(std::in_place_index<0>, std::move(value)) {}
    Result(E error) : state_(std::in_place_index<1>, std::move(error)) {}

    bool ok() const { return state_.index() == 0; }
    explicit operator bool() const { return ok(); }

    T& value() & {
        assert(ok());
        return std::get<0>(state_);
    }
    const T& value() const& {
        assert(ok());
        return std::get<0>(state_);
    }
    T&& value() && {
        assert(ok());
        return std::get<0>(std::move(state_));
    }

    E& error() & {
        assert(!ok());
        return std::get<1>(state_);
    }
    const E& error() const& {
        assert(!ok());
        return std::get<1>(state_);
    }

private:
    std::variant<T, E> state_;
};

}  // namespace netforge
