# -*- coding: utf-8 -*-
"""Experiment Domain Tests"""
