/*
 * Copyright 2026 The cgt Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef CGT_SURVEY_HPP
#define CGT_SURVEY_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "cgt/coalition.hpp"
#include "cgt/errors.hpp"
#include "cgt/game.hpp"

namespace cgt {

/// Respondent-level key-driver data: per respondent, a bitmask of
/// failed attributes and an overall dissatisfaction flag. Requires at
/// least one dissatisfied and one satisfied respondent.
class SurveyData {
public:
    SurveyData(int attributes, std::vector<std::uint64_t> failure_masks,
               std::vector<bool> dissatisfied)
        : attributes_(attributes), failures_(std::move(failure_masks)),
          dissatisfied_(std::move(dissatisfied)) {
        if (attributes_ < 1 || attributes_ > kMaxPlayers)
            throw input_error("survey: attribute count must be in 1.." +
                              std::to_string(kMaxPlayers));
        if (failures_.size() != dissatisfied_.size() || failures_.empty())
            throw input_error("survey: respondent rows are inconsistent");
        const std::uint64_t universe = Coalition::full(attributes_).mask();
        for (std::uint64_t m : failures_)
            if (m & ~universe) throw input_error("survey: failure mask outside the attributes");
        int d1 = 0, d0 = 0;
        for (bool d : dissatisfied_) (d ? d1 : d0)++;
        if (d1 == 0 || d0 == 0)
            throw input_error(
                "survey: need at least one dissatisfied and one satisfied respondent");
        dissatisfied_count_ = d1;
        satisfied_count_ = d0;
    }

    int attributes() const { return attributes_; }
    std::size_t respondents() const { return failures_.size(); }
    int dissatisfied_count() const { return dissatisfied_count_; }
    int satisfied_count() const { return satisfied_count_; }
    std::uint64_t failure_mask(std::size_t r) const { return failures_[r]; }
    bool is_dissatisfied(std::size_t r) const { return dissatisfied_[r]; }

private:
    int attributes_;
    std::vector<std::uint64_t> failures_;
    std::vector<bool> dissatisfied_;
    int dissatisfied_count_ = 0;
    int satisfied_count_ = 0;
};

/// Key-driver game over attributes: the worth of an attribute set is
/// the share of dissatisfied respondents it reaches (some member
/// failed) minus the share of satisfied respondents it also flags.
inline Game reach_noise_game(SurveyData data) {
    auto survey = std::make_shared<const SurveyData>(std::move(data));
    return Game(survey->attributes(), [survey](Coalition s) {
        const std::uint64_t m = s.mask();
        int reached = 0, noisy = 0;
        for (std::size_t r = 0; r < survey->respondents(); ++r) {
            if ((survey->failure_mask(r) & m) == 0) continue;
            (survey->is_dissatisfied(r) ? reached : noisy)++;
        }
        return static_cast<double>(reached) / survey->dissatisfied_count() -
               static_cast<double>(noisy) / survey->satisfied_count();
    });
}

}  // namespace cgt

#endif  // CGT_SURVEY_HPP
