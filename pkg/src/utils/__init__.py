"""Logging setup shared by the command line and the tests"""
