// SPDX-License-Identifier: Apache-2.0
//
// risopt: reflection optimization for RIS-aided links with coupled
// phase shift and amplitude.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include "risopt/bench.hpp"
#include "risopt/channel.hpp"
#include "risopt/interval.hpp"
#include "risopt/optimize.hpp"
#include "risopt/rng.hpp"
#include "risopt/select.hpp"
