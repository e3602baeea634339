"""Hashing and formatting helpers"""
