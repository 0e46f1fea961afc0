#pragma once

#include "formspec/errors.hpp"
#include "formspec/integer_algebra.hpp"
#include "formspec/flat_manifold.hpp"
#include "formspec/flat_spectra.hpp"
#include "formspec/verdict.hpp"
#include "formspec/product_spectra.hpp"
#include "formspec/sparse_operator.hpp"
#include "formspec/weyl.hpp"
#include "formspec/test_forms.hpp"
#include "formspec/weyl_sequences.hpp"
#include "formspec/localization.hpp"
#include "formspec/warped.hpp"
#include "formspec/io.hpp"
