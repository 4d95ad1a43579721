// Copyright 2026 The vhal-audit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace vhal_audit {

// Root of every error the library throws. The CLI maps UsageError to exit
// code 1 and everything else to exit code 2.
class AuditError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

#define VHAL_AUDIT_DEFINE_ERROR(Name)                                         \
  class Name : public AuditError {                                            \
  public:                                                                     \
    using AuditError::AuditError;                                             \
  }

VHAL_AUDIT_DEFINE_ERROR(NormalizationError);
VHAL_AUDIT_DEFINE_ERROR(ScanError);
VHAL_AUDIT_DEFINE_ERROR(KeyError);
VHAL_AUDIT_DEFINE_ERROR(DomainError);
VHAL_AUDIT_DEFINE_ERROR(ParseError);
VHAL_AUDIT_DEFINE_ERROR(FormatError);
VHAL_AUDIT_DEFINE_ERROR(ConfigError);
VHAL_AUDIT_DEFINE_ERROR(EmptyDocument);
VHAL_AUDIT_DEFINE_ERROR(RemoteExtractorError);
VHAL_AUDIT_DEFINE_ERROR(SchemaError);
VHAL_AUDIT_DEFINE_ERROR(MergeError);
VHAL_AUDIT_DEFINE_ERROR(UsageError);

#undef VHAL_AUDIT_DEFINE_ERROR

}  // namespace vhal_audit
