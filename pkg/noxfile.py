# -*- coding: utf-8 -*-
#
# Copyright 2026 The multiprecision-fpmul Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

from __future__ import absolute_import

import os
import shutil

import nox

DEFAULT_PYTHON_VERSION = "3.10"
UNIT_TEST_PYTHON_VERSIONS = ["3.8", "3.9", "3.10", "3.11", "3.12"]

nox.options.sessions = [
    "unit",
    "lint",
    "docs",
]

# Error if a python version is missing
nox.options.error_on_missing_interpreters = True


@nox.session(python=UNIT_TEST_PYTHON_VERSIONS)
def unit(session):
    """Run the test suite with coverage."""

    session.install("-r", "requirements.txt")
    session.install("-e", ".[test]")
    session.run(
        "pytest",
        "--cov=multiprecision_fpmul",
        "--cov-config=.coveragerc",
        "--cov-report=term-missing",
        os.path.join("tests", ""),
        *session.posargs,
        env={"HYPOTHESIS_PROFILE": os.environ.get("HYPOTHESIS_PROFILE", "ci")},
    )


@nox.session(python=DEFAULT_PYTHON_VERSION)
def lint(session):
    """Check formatting, import order and types."""

    session.install("-e", ".[test]")
    session.run("black", "--check", "src", "tests")
    session.run("isort", "--check", "src", "tests")
    session.run("mypy", "-p", "multiprecision_fpmul")


@nox.session(python=DEFAULT_PYTHON_VERSION)
def selftest(session):
    """Run the built-in differential suites at release-gate sample counts."""

    session.install("-e", ".")
    session.run("fpmul", "-v", "selftest", "--acceptance", *session.posargs)


@nox.session(python=DEFAULT_PYTHON_VERSION)
def docs(session):
    """Build the docs for this library."""

    session.install("-e", ".")
    session.install(
        # The sphinxcontrib-* packages are pinned to releases supporting sphinx 4.x.
        "sphinxcontrib-applehelp==1.0.4",
        "sphinxcontrib-devhelp==1.0.2",
        "sphinxcontrib-htmlhelp==2.0.1",
        "sphinxcontrib-qthelp==1.0.3",
        "sphinxcontrib-serializinghtml==1.1.5",
        "sphinx==4.5.0",
        "alabaster",
        "recommonmark",
    )

    shutil.rmtree(os.path.join("docs", "_build"), ignore_errors=True)
    session.run(
        "sphinx-build",
        "-W",  # warnings as errors
        "-T",  # show full traceback on exception
        "-N",  # no colors
        "-b",
        "html",
        "-d",
        os.path.join("docs", "_build", "doctrees", ""),
        os.path.join("docs", ""),
        os.path.join("docs", "_build", "html", ""),
    )
