# -*- coding: utf-8 -*-
"""
核心功能模块测试的初始化文件。
(Initialization file for tests of core functionality modules.)
"""
