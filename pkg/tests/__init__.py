# -*- coding: utf-8 -*-
"""
测试包的根初始化文件。
(Root initialization file for the tests package.)
"""
