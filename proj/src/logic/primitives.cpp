#include <cogwin/logic/primitives.hpp>

#include <algorithm>

namespace cogwin::logic {

void PrimitiveTable::add(std::string_view name, std::uint32_t arity, PrimitiveFn fn) {
    PredKey key{intern(name), arity};
    if (fns_.find(key) == fns_.end()) order_.push_back(key);
    fns_[key] = std::move(fn);
}

const PrimitiveFn* PrimitiveTable::find(PredKey key) const {
    auto it = fns_.find(key);
    return it == fns_.end() ? nullptr : &it->second;
}

PrimitiveTable PrimitiveTable::restricted(std::span<const PredKey> keep) const {
    PrimitiveTable out;
    for (auto k : order_)
        if (std::find(keep.begin(), keep.end(), k) != keep.end()) out.add(symbol_text(k.name), k.arity, fns_.at(k));
    return out;
}

}  // namespace cogwin::logic
