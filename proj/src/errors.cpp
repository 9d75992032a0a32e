// Copyright 2026 The qdl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qdl/errors.hpp"

namespace qdl {

int exit_code(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::Capacity:
        return 3;
    case ErrorKind::Numeric:
    case ErrorKind::Contract:
        return 4;
    default:
        return 2;
    }
}

const char *to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::Usage:
        return "usage error";
    case ErrorKind::Parse:
        return "parse error";
    case ErrorKind::Domain:
        return "domain error";
    case ErrorKind::Shape:
        return "shape error";
    case ErrorKind::Index:
        return "index error";
    case ErrorKind::Capacity:
        return "capacity error";
    case ErrorKind::Numeric:
        return "numeric error";
    case ErrorKind::Contract:
        return "contract error";
    }
    return "error";
}

}  // namespace qdl
