# -*- coding: utf-8 -*-
"""Circle Domain Tests"""
