#pragma once

#include <vector>

#include "ctxmem/vocabulary.hpp"

namespace ctxmem {

/// Short-term contextual memory: observation LVs for a window of
/// `window_days` consecutive days. Draining returns the window's contents,
/// clears the buffer and moves the window forward by `window_days`, whether
/// or not anything was stored.
class StcmBuffer {
public:
    explicit StcmBuffer(int window_days = 2, int window_start_day = 0);
    StcmBuffer(int window_days, int window_start_day, std::vector<LatentVariable> entries);

    void store(LatentVariable lv);
    std::vector<LatentVariable> drain_window();

    bool accepts_day(int day) const { return day >= start_ && day <= window_end_day(); }

    int window_days() const { return window_days_; }
    int window_start_day() const { return start_; }
    int window_end_day() const { return start_ + window_days_ - 1; }
    const std::vector<LatentVariable>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

    bool operator==(const StcmBuffer&) const = default;

private:
    int window_days_;
    int start_;
    std::vector<LatentVariable> entries_;
};

}  // namespace ctxmem
