"""Verification suites"""
from src.verification.report import CheckSkipped, Measurement, RunConfig
from src.verification.suites import BaseSuite, SuiteRegistry

__all__ = ["BaseSuite", "CheckSkipped", "Measurement", "RunConfig", "SuiteRegistry"]
