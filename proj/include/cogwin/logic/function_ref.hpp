#pragma once

#include <memory>
#include <type_traits>
#include <utility>

namespace cogwin {

/// Non-owning reference to a callable. The referenced callable must outlive
/// every invocation.
template <class Sig>
class FunctionRef;

template <class R, class... Args>
class FunctionRef<R(Args...)> {
public:
    template <class F,
              class = std::enable_if_t<!std::is_same_v<std::remove_cvref_t<F>, FunctionRef>>>
    FunctionRef(F&& f)  // NOLINT(google-explicit-constructor)
        : obj_(const_cast<void*>(static_cast<const void*>(std::addressof(f)))),
          cb_([](void* o, Args... a) -> R {
              return (*static_cast<std::remove_reference_t<F>*>(o))(std::forward<Args>(a)...);
          }) {}

    R operator()(Args... a) const { return cb_(obj_, std::forward<Args>(a)...); }

private:
    void* obj_;
    R (*cb_)(void*, Args...);
};

}  // namespace cogwin
