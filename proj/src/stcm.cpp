#include "ctxmem/stcm.hpp"

#include "ctxmem/errors.hpp"

namespace ctxmem {

StcmBuffer::StcmBuffer(int window_days, int window_start_day)
    : window_days_(window_days), start_(window_start_day)
{
    if (window_days_ < 1) {
        throw InvalidInputError("STCM window must span at least one day");
    }
}

StcmBuffer::StcmBuffer(int window_days, int window_start_day, std::vector<LatentVariable> entries)
    : StcmBuffer(window_days, window_start_day)
{
    for (auto& lv : entries) {
        store(std::move(lv));
    }
}

void StcmBuffer::store(LatentVariable lv)
{
    if (lv.kind != LvKind::observation) {
        throw InvalidInputError("STCM only stores observation LVs");
    }
    if (!accepts_day(lv.day)) {
        throw StateError("day " + std::to_string(lv.day) + " is outside the STCM window [" +
                         std::to_string(start_) + ", " + std::to_string(window_end_day()) +
                         "]; drain the window first");
    }
    if (!entries_.empty() && entries_.front().size() != lv.size()) {
        throw DimensionError("STCM entries must share one dimension");
    }
    entries_.push_back(std::move(lv));
}

std::vector<LatentVariable> StcmBuffer::drain_window()
{
    std::vector<LatentVariable> out;
    out.swap(entries_);
    start_ += window_days_;
    return out;
}

}  // namespace ctxmem
