#pragma once

#include <map>
#include <mutex>

namespace hermlag::detail {

// Thread-safe memo table for pure functions. The value is computed outside the lock,
// so two threads may race to compute the same key; the first insert wins.
template <class Key, class Value>
class Memo {
public:
    template <class Fn>
    Value get(const Key& key, Fn&& compute) {
        {
            std::lock_guard lock(mutex_);
            if (auto it = table_.find(key); it != table_.end()) return it->second;
        }
        Value v = compute();
        std::lock_guard lock(mutex_);
        return table_.try_emplace(key, std::move(v)).first->second;
    }

private:
    std::mutex mutex_;
    std::map<Key, Value> table_;
};

}  // namespace hermlag::detail
