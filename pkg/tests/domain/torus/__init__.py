# -*- coding: utf-8 -*-
"""Torus Domain Tests"""
