package com.telenav.app.android.scout_us;

class VehicleBridge {
  int p0 = read(VENDOR_PARKING_BRAKE_159);
  // again: 557842773
  int p1 = read(0x214002c5);
  int p2 = read(VENDOR_OIL_LIFE_127);
  int p3 = read(0x2140007B);
  int p4 = read(VENDOR_CRUISE_CONTROL_110);
  int p5 = read(0x214002d3);
  // again: 557843155
  int p6 = read(VENDOR_MIRROR_FOLD_11);
  int p7 = read(0x21400184);
  int p8 = read(VENDOR_CLIMATE_TEMPERATURE_82);
  int p9 = read(0x214001FF);
  int p10 = read(VENDOR_FUEL_RANGE_78);
  // again: 557842888
  int p11 = read(0x2140002d);
  int p12 = read(VENDOR_ENGINE_RPM_121);
  int p13 = read(0x2140027a);
  int p14 = read(VENDOR_CRUISE_CONTROL_6);
  int p15 = read(0x214000A5);
  // again: 557842597
  int p16 = read(VENDOR_MIRROR_FOLD_75);
  int p17 = read(0x2140027c);
  int p18 = read(VENDOR_ENGINE_RPM_117);
  int p19 = read(0x214002aa);
  int p20 = read(VENDOR_ODOMETER_ESTIMATE_10);
  // again: 557842965
  int p21 = read(0x214001C5);
  int p22 = read(VENDOR_LANGUAGE_SETTING_35);
  int p23 = read(0x21400240);
  int p24 = read(VENDOR_SEAT_BELT_REMINDER_145);
  int p25 = read(0x21400174);
  // again: 557842804
  int p26 = read(VENDOR_CRUISE_CONTROL_150);
  int p27 = read(0x21400227);
  int p28 = read(VENDOR_LANE_KEEP_ASSIST_112);
  int p29 = read(0x214001a4);
  int p30 = read(VENDOR_BATTERY_LEVEL_108);
  // again: 557842918
  int p31 = read(0x214000fa);
  int p32 = read(VENDOR_USER_PROFILE_0);
  int p33 = read(0x21400238);
  int p34 = read(VENDOR_USER_PROFILE_116);
  int p35 = read(0x21400231);
  // again: 557842993
  int p36 = read(VENDOR_LANE_KEEP_ASSIST_0);
  int p37 = read(0x214000b4);
  int p38 = read(VENDOR_DISPLAY_THEME_118);
  int p39 = read(0x21400071);
  int p40 = read(VENDOR_DISPLAY_THEME_74);
  // again: 557842506
  int p41 = read(0x214002d6);
  int p42 = read(VENDOR_LANE_KEEP_ASSIST_132);
  int p43 = read(0x21400169);
  int p44 = read(VENDOR_DISPLAY_THEME_114);
  int p45 = read(0x2140022C);
  // again: 557842988
  String s = "VENDOR_PARKING_BRAKE_159X";
  long q = 0x214001551;
}
