# -*- coding: utf-8 -*-
"""Domain Tests"""
