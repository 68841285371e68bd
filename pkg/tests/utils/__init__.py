# -*- coding: utf-8 -*-
"""
工具模块测试的初始化文件。
(Initialization file for tests of utility modules.)
"""
